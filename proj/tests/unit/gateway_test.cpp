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

#include <map>

#include "support/properties.hpp"
#include "vaultgate/gateway/gateway.hpp"

namespace vaultgate::gateway {
namespace {

// A host with one store, a few contracts and their enclaves; records every
// callback.
class FakeHost : public GatewayHost {
 public:
  FakeHost() {
    auto t = store::parse_table_csv(vgtest::kOrdersCsv);
    store.register_table("warehouse.orders", t.schema, t.rows);
    add("c1", vgtest::kC1Text, 0);
  }

  enclave::Enclave& add(const std::string& id, const std::string& text, Timestamp at) {
    auto c = contract::activate(contract::parse_contract(text), at);
    contracts[id] = c;
    tokens[id] = "tok-" + id;
    auto e = enclave::Enclave::create("enc-" + id, c, at);
    e.provision(store, at);
    e.seal(at);
    e.open_gate(at);
    return enclaves.insert_or_assign("enc-" + id, e).first->second;
  }

  const enclave::Enclave* find_enclave(std::string_view id) const override {
    auto it = enclaves.find(std::string(id));
    return it == enclaves.end() ? nullptr : &it->second;
  }
  const contract::DataContract* find_contract(std::string_view id) const override {
    auto it = contracts.find(std::string(id));
    return it == contracts.end() ? nullptr : &it->second;
  }
  const SchemaCatalog& catalog() const override { return store.catalog(); }
  bool token_matches(const contract::DataContract& c, std::string_view token) const override {
    auto it = tokens.find(c.contract_id);
    return it != tokens.end() && it->second == token;
  }
  std::string next_id(std::string_view prefix) override { return std::string(prefix) + "-" + std::to_string(++serial); }
  void on_session_opened(const Session& s) override { opened.push_back(s.session_id); }
  void on_session_closed(const Session& s, Timestamp) override { closed.push_back(s.session_id); }
  void on_query(const QueryEvent& e) override { queries.push_back(e); }

  store::TabularStore store;
  std::map<std::string, contract::DataContract> contracts;
  std::map<std::string, enclave::Enclave> enclaves;
  std::map<std::string, std::string> tokens;
  std::vector<std::string> opened, closed;
  std::vector<QueryEvent> queries;
  int serial = 0;
};

class GatewayTest : public ::testing::Test {
 protected:
  FakeHost host;
  Gateway gw{host};
  std::string sid = gw.open_session("enc-c1", "tok-c1", 10).session_id;

  Decision run(const std::string& text, Timestamp now = 20) { return gw.execute(sid, text, now).decision; }
};

TEST_F(GatewayTest, AllowedSelectReturnsSegmentRows) {
  const auto out = gw.execute(sid, "SELECT order_id, amount FROM orders WHERE amount > 80", 20);
  ASSERT_TRUE(out.decision.allowed());
  ASSERT_TRUE(out.result.has_value());
  EXPECT_EQ(out.result->columns, (std::vector<std::string>{"order_id", "amount"}));
  ASSERT_EQ(out.result->rows.size(), 1u);
  EXPECT_EQ(out.result->rows[0][0], Value(std::int64_t{2}));
  EXPECT_FALSE(out.result->truncated);
}

TEST_F(GatewayTest, LimitMarksTruncation) {
  const auto out = gw.execute(sid, "SELECT * FROM orders LIMIT 1", 20);
  ASSERT_TRUE(out.result);
  EXPECT_EQ(out.result->rows.size(), 1u);
  EXPECT_TRUE(out.result->truncated);
  EXPECT_FALSE(gw.execute(sid, "SELECT * FROM orders LIMIT 2", 20).result->truncated);
}

TEST_F(GatewayTest, ShowTablesListsGrantedTables) {
  const auto out = gw.execute(sid, "SHOW TABLES", 20);
  ASSERT_TRUE(out.result);
  EXPECT_EQ(out.result->columns, std::vector<std::string>{"table"});
  EXPECT_EQ(out.result->rows, (std::vector<std::vector<Value>>{{Value{std::string("orders")}}}));
}

TEST_F(GatewayTest, DenialsCarryCodes) {
  EXPECT_EQ(run("COPY INTO x FROM orders").code, DenyCode::StatementForbidden);
  EXPECT_EQ(run("SELECT * FROM customers").code, DenyCode::UnknownTable);
  EXPECT_EQ(run("SELECT customer FROM orders").code, DenyCode::ColumnOutOfScope);
  EXPECT_EQ(run("SELECT amount FROM orders WHERE customer = \"acme\"").code, DenyCode::ColumnOutOfScope);
  EXPECT_EQ(run("SELECT * FROM orders", 3600).code, DenyCode::ContractExpired);
}

TEST_F(GatewayTest, TypeAndParseErrorsAreReportedThenRaised) {
  try {
    gw.execute(sid, "SELECT * FROM orders WHERE amount = \"x\"", 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TypeMismatch);
  }
  EXPECT_THROW(gw.execute(sid, "DROP TABLE orders", 20), ParseError);
  ASSERT_EQ(host.queries.size(), 2u);
  EXPECT_EQ(host.queries[0].error, ErrorCode::TypeMismatch);
  EXPECT_FALSE(host.queries[0].allowed());
  EXPECT_EQ(host.queries[1].error, ErrorCode::ParseError);
  EXPECT_FALSE(host.queries[1].kind.has_value());
}

TEST_F(GatewayTest, GrantRowLimitCapsEveryQuery) {
  host.add("c9",
           "contract \"c9\" { principal \"p\" purpose \"x\" expires_in 1h grant { source warehouse.orders "
           "columns * row_limit 2 } }",
           0);
  const auto s9 = gw.open_session("enc-c9", "tok-c9", 1).session_id;
  const auto all = gw.execute(s9, "SELECT * FROM orders", 2);
  ASSERT_TRUE(all.result);
  EXPECT_EQ(all.result->rows.size(), 2u);
  EXPECT_TRUE(all.result->truncated);
  const auto one = gw.execute(s9, "SELECT * FROM orders LIMIT 1", 2);
  EXPECT_EQ(one.result->rows.size(), 1u);
  const auto few = gw.execute(s9, "SELECT * FROM orders WHERE amount > 90", 2);
  EXPECT_EQ(few.result->rows.size(), 2u);
  EXPECT_FALSE(few.result->truncated);
}

TEST_F(GatewayTest, OpenSessionChecks) {
  try {
    gw.open_session("enc-c1", "wrong", 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadToken);
  }
  try {
    gw.open_session("enc-none", "tok-c1", 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownEnclave);
  }
  host.enclaves.at("enc-c1").expire_or_revoke(enclave::Cause::Revocation, 11);
  try {
    gw.open_session("enc-c1", "tok-c1", 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EnclaveNotServing);
  }
}

TEST_F(GatewayTest, InvalidationKillsSessions) {
  const auto second = gw.open_session("enc-c1", "tok-c1", 10).session_id;
  const auto killed = gw.invalidate_enclave("enc-c1");
  EXPECT_EQ(killed.size(), 2u);
  EXPECT_TRUE(gw.find_session(sid)->closed);
  EXPECT_TRUE(gw.find_session(second)->closed);
  EXPECT_EQ(run("SELECT * FROM orders").code, DenyCode::SessionDead);
}

TEST_F(GatewayTest, CloseTwiceIsSessionDead) {
  gw.close_session(sid, 30);
  EXPECT_EQ(host.closed, std::vector<std::string>{sid});
  try {
    gw.close_session(sid, 31);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SessionDead);
  }
  try {
    gw.close_session("ses-none", 31);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownSession);
  }
}

TEST_F(GatewayTest, EveryExecuteIsReported) {
  const std::vector<std::string> statements = {"SHOW TABLES", "SELECT * FROM orders", "COPY INTO x FROM orders",
                                               "garbage", "SELECT ghost FROM orders", ""};
  for (const auto& s : statements) {
    try {
      gw.execute(sid, s, 20);
    } catch (const Error&) {
    }
  }
  gw.close_session(sid, 21);
  gw.execute(sid, "SELECT * FROM orders", 22);
  EXPECT_EQ(host.queries.size(), gw.execute_calls());
  EXPECT_EQ(host.queries.size(), statements.size() + 1);
  EXPECT_EQ(host.queries.back().decision.code, DenyCode::SessionDead);
}

TEST(Authorize, FirstMatchOrder) {
  FakeHost host;
  const auto& c = host.contracts.at("c1");
  Session live{"s", "enc-c1", "c1", "svc-reporting", 0, false};
  Session dead = live;
  dead.closed = true;
  const auto& cat = host.catalog();
  auto code = [&](const char* text, const Session& s, enclave::State st, Timestamp now) {
    return authorize(parse_query(text), c, cat, s, st, now).code;
  };
  using enclave::State;
  // COPY INTO outranks everything, even a dead session on an expired contract.
  EXPECT_EQ(code("COPY INTO x FROM orders", dead, State::Expired, 99999), DenyCode::StatementForbidden);
  EXPECT_EQ(code("SELECT * FROM orders", dead, State::Expired, 3600), DenyCode::ContractExpired);
  EXPECT_EQ(code("SELECT * FROM orders", dead, State::Serving, 10), DenyCode::SessionDead);
  EXPECT_EQ(code("SELECT * FROM orders", live, State::Revoked, 10), DenyCode::SessionDead);
  EXPECT_EQ(code("SELECT customer FROM nowhere", live, State::Serving, 10), DenyCode::UnknownTable);
  EXPECT_EQ(code("SELECT customer FROM orders", live, State::Serving, 10), DenyCode::ColumnOutOfScope);
  EXPECT_FALSE(code("SELECT * FROM orders", live, State::Serving, 3599).has_value());
  EXPECT_FALSE(code("SHOW TABLES", live, State::Serving, 10).has_value());
}

}  // namespace
}  // namespace vaultgate::gateway
