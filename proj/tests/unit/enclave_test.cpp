// Copyright 2026 The Vaultgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include "support/properties.hpp"
#include "vaultgate/enclave/enclave.hpp"

namespace vaultgate::enclave {

// Forges door states the public API can never reach.
struct EnclaveTestPeer {
  static void set_doors(Enclave& e, bool upstream, bool gateway) {
    e.upstream_open_ = upstream;
    e.gateway_open_ = gateway;
  }
  static void set_state(Enclave& e, State s) { e.state_ = s; }
};

namespace {

using vgtest::DoorWorld;

TEST(Enclave, ForwardPathOpensDoorsInTurn) {
  const DoorWorld w;
  auto e = Enclave::create("enc-1", w.contract, 5);
  EXPECT_EQ(e.state(), State::Defined);
  EXPECT_FALSE(e.upstream_open());
  EXPECT_FALSE(e.gateway_open());

  e.provision(w.good, 6);
  EXPECT_EQ(e.state(), State::Provisioning);
  EXPECT_TRUE(e.upstream_open());
  EXPECT_FALSE(e.gateway_open());

  e.seal(7);
  EXPECT_EQ(e.state(), State::Sealed);
  EXPECT_FALSE(e.upstream_open());
  EXPECT_EQ(e.sealed_at(), 7);

  e.open_gate(8);
  EXPECT_EQ(e.state(), State::Serving);
  EXPECT_TRUE(e.gateway_open());
  EXPECT_FALSE(e.upstream_open());

  e.expire_or_revoke(Cause::Expiry, 9);
  EXPECT_EQ(e.state(), State::Expired);
  EXPECT_FALSE(e.gateway_open());

  e.destroy(10);
  EXPECT_EQ(e.state(), State::Destroyed);
  EXPECT_TRUE(e.segments().empty());

  std::vector<State> seen;
  for (const auto& h : e.history()) seen.push_back(h.to);
  EXPECT_EQ(seen, (std::vector<State>{State::Defined, State::Provisioning, State::Sealed, State::Serving,
                                      State::Expired, State::Destroyed}));
  EXPECT_FALSE(e.history().front().from.has_value());
  EXPECT_EQ(e.history().back().at, 10);
}

TEST(Enclave, CausesPickTerminalState) {
  const DoorWorld w;
  for (auto [cause, want] : {std::pair{Cause::Expiry, State::Expired}, std::pair{Cause::BreakGlassAuto, State::Expired},
                             std::pair{Cause::Revocation, State::Revoked}, std::pair{Cause::Operator, State::Revoked}}) {
    auto e = Enclave::create("e", w.contract, 0);
    e.expire_or_revoke(cause, 1);
    EXPECT_EQ(e.state(), want) << to_string(cause);
    EXPECT_EQ(e.history().back().cause, cause);
  }
}

TEST(Enclave, CreateRequiresLiveContract) {
  DoorWorld w;
  auto draft = w.contract;
  draft.status = contract::Status::Draft;
  draft.activated_at.reset();
  EXPECT_THROW(Enclave::create("e", draft, 0), Error);
  EXPECT_THROW(Enclave::create("e", w.contract, 1000), Error);  // ttl elapsed
}

TEST(Enclave, ProvisionFailureRevokes) {
  const DoorWorld w;
  auto e = Enclave::create("e", w.contract, 0);
  try {
    e.provision(w.empty, 1);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::UnknownSource);
  }
  EXPECT_EQ(e.state(), State::Revoked);
  EXPECT_FALSE(e.upstream_open());
  EXPECT_TRUE(e.segments().empty());
  EXPECT_EQ(e.history().back().cause, Cause::Revocation);
}

TEST(Enclave, SegmentsNeverChangeAfterSeal) {
  DoorWorld w;
  auto e = Enclave::create("e", w.contract, 0);
  e.provision(w.good, 1);
  e.seal(2);
  const auto digest = e.segments_digest();
  const auto reads = w.good.access_count();
  w.good.append_rows("ns.t", {{std::int64_t{3}}});
  e.open_gate(3);
  EXPECT_EQ(e.segments_digest(), digest);
  EXPECT_EQ(e.segments().at(0).rows.size(), 2u);
  e.expire_or_revoke(Cause::Revocation, 4);
  EXPECT_EQ(e.segments_digest(), digest);
  EXPECT_EQ(w.good.access_count(), reads);  // no upstream reads after seal
}

TEST(Enclave, TableLookup) {
  const DoorWorld w;
  auto e = Enclave::create("e", w.contract, 0);
  EXPECT_EQ(e.table_names(), std::vector<std::string>{"t"});
  EXPECT_EQ(e.grant_for_table("t"), 0u);
  EXPECT_FALSE(e.grant_for_table("u").has_value());
}

TEST(Enclave, ForgedUpstreamDoorBlocksOpenGate) {
  const DoorWorld w;
  auto e = Enclave::create("e", w.contract, 0);
  e.provision(w.good, 1);
  e.seal(2);
  EnclaveTestPeer::set_doors(e, true, false);
  try {
    e.open_gate(3);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::ManTrapViolation);
  }
  EXPECT_FALSE(e.gateway_open());
}

TEST(Enclave, ForgedGatewayDoorBlocksProvision) {
  const DoorWorld w;
  auto e = Enclave::create("e", w.contract, 0);
  EnclaveTestPeer::set_doors(e, false, true);
  try {
    e.provision(w.good, 1);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::StateError);
  }
  EXPECT_EQ(e.state(), State::Defined);
  EXPECT_FALSE(e.upstream_open());
}

TEST(EnclaveProperty, ManTrapExhaustiveToDepthFive) {
  const auto r = vgtest::check_mantrap(5, 300, 40, 99);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(EnclaveProperty, ModelRejectsEverythingFromDestroyed) {
  for (std::size_t k = 0; k < vgtest::kDoorOps; ++k) {
    EXPECT_FALSE(vgtest::model_next(State::Destroyed, static_cast<vgtest::DoorOp>(k)).has_value());
  }
}

}  // namespace
}  // namespace vaultgate::enclave
