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

#include "vaultgate/enclave/enclave.hpp"

#include <algorithm>

#include "vaultgate/contract/codec.hpp"
#include "vaultgate/core/canonical_json.hpp"
#include "vaultgate/core/error.hpp"
#include "vaultgate/core/sha256.hpp"

namespace vaultgate::enclave {

std::string_view to_string(State state) noexcept {
  switch (state) {
    case State::Defined:
      return "Defined";
    case State::Provisioning:
      return "Provisioning";
    case State::Sealed:
      return "Sealed";
    case State::Serving:
      return "Serving";
    case State::Expired:
      return "Expired";
    case State::Revoked:
      return "Revoked";
    case State::Destroyed:
      return "Destroyed";
  }
  return "Defined";
}

std::string_view to_string(Cause cause) noexcept {
  switch (cause) {
    case Cause::Operator:
      return "Operator";
    case Cause::Expiry:
      return "Expiry";
    case Cause::Revocation:
      return "Revocation";
    case Cause::BreakGlassAuto:
      return "BreakGlassAuto";
  }
  return "Operator";
}

Enclave Enclave::create(std::string enclave_id, const contract::DataContract& c, Timestamp now) {
  if (!contract::is_live(c, now)) {
    throw Error(ErrorCode::ContractNotLive, "contract '" + c.contract_id + "' is not live");
  }
  Enclave e;
  e.id_ = std::move(enclave_id);
  e.contract_id_ = c.contract_id;
  e.grants_ = c.grants;
  e.created_at_ = now;
  e.history_.push_back({e.id_, std::nullopt, State::Defined, now, Cause::Operator});
  e.check_invariants();
  return e;
}

void Enclave::reject(std::string_view op) const {
  throw Error(ErrorCode::StateError, "enclave '" + id_ + "': " + std::string(op) + " not allowed in state " +
                                         std::string(to_string(state_)));
}

void Enclave::move_to(State to, Cause cause, Timestamp now) {
  history_.push_back({id_, state_, to, now, cause});
  state_ = to;
  check_invariants();
}

void Enclave::check_invariants() const {
  if (upstream_open_ && gateway_open_) {
    throw Error(ErrorCode::ManTrapViolation, "enclave '" + id_ + "': both doors open");
  }
  if (upstream_open_ && state_ != State::Provisioning) {
    throw Error(ErrorCode::ManTrapViolation, "enclave '" + id_ + "': upstream open outside provisioning");
  }
  if (gateway_open_ && state_ != State::Serving) {
    throw Error(ErrorCode::ManTrapViolation, "enclave '" + id_ + "': gateway open outside serving");
  }
  if (state_ == State::Destroyed && !segments_.empty()) {
    throw Error(ErrorCode::Internal, "enclave '" + id_ + "': destroyed with segments");
  }
}

void Enclave::provision(const store::TabularStore& store, Timestamp now) {
  if (state_ != State::Defined) reject("provision");
  if (gateway_open_) reject("provision with the gateway door open");

  move_to(State::Provisioning, Cause::Operator, now);
  upstream_open_ = true;
  check_invariants();
  try {
    for (std::size_t i = 0; i < grants_.size(); ++i) {
      segments_.emplace(i, store.extract_segment(grants_[i].source, grants_[i], now));
    }
  } catch (const Error&) {
    upstream_open_ = false;
    segments_.clear();
    move_to(State::Revoked, Cause::Revocation, now);
    throw;
  }
}

void Enclave::seal(Timestamp now) {
  if (state_ != State::Provisioning || segments_.size() != grants_.size()) reject("seal");
  upstream_open_ = false;
  sealed_at_ = now;
  move_to(State::Sealed, Cause::Operator, now);
}

void Enclave::open_gate(Timestamp now) {
  if (state_ != State::Sealed) reject("open_gate");
  if (upstream_open_) {
    throw Error(ErrorCode::ManTrapViolation, "enclave '" + id_ + "': upstream door still open");
  }
  gateway_open_ = true;
  move_to(State::Serving, Cause::Operator, now);
}

void Enclave::expire_or_revoke(Cause cause, Timestamp now) {
  if (!is_live_state()) reject("expire_or_revoke");
  upstream_open_ = false;
  gateway_open_ = false;
  const bool timed_out = cause == Cause::Expiry || cause == Cause::BreakGlassAuto;
  move_to(timed_out ? State::Expired : State::Revoked, cause, now);
}

void Enclave::destroy(Timestamp now) {
  if (state_ != State::Expired && state_ != State::Revoked) reject("destroy");
  segments_.clear();
  move_to(State::Destroyed, Cause::Operator, now);
}

bool Enclave::is_live_state() const noexcept {
  return state_ == State::Defined || state_ == State::Provisioning || state_ == State::Sealed ||
         state_ == State::Serving;
}

std::vector<std::string> Enclave::table_names() const {
  std::vector<std::string> out;
  for (const auto& g : grants_) {
    auto name = g.table_name();
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
  }
  return out;
}

std::optional<std::size_t> Enclave::grant_for_table(std::string_view table) const {
  for (std::size_t i = 0; i < grants_.size(); ++i) {
    if (grants_[i].table_name() == table) return i;
  }
  return std::nullopt;
}

std::string Enclave::segments_digest() const {
  Json all = Json::array();
  for (const auto& [idx, seg] : segments_) {
    Json cols = Json::array();
    for (const auto& c : seg.columns) cols.push_back({c.name, std::string(to_string(c.type))});
    Json rows = Json::array();
    for (const auto& row : seg.rows) {
      Json r = Json::array();
      for (const auto& v : row) r.push_back(contract::literal_to_json(v));
      rows.push_back(std::move(r));
    }
    all.push_back({{"grant", idx}, {"origin", seg.origin}, {"columns", std::move(cols)},
                   {"rows", std::move(rows)}, {"extracted_at", seg.extracted_at}});
  }
  return sha256_hex(canonical_dump(all));
}

}  // namespace vaultgate::enclave
