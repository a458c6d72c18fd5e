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

#include "support/gen.hpp"
#include "vaultgate/contract/codec.hpp"
#include "vaultgate/contract/contract.hpp"
#include "vaultgate/contract/dsl.hpp"
#include "vaultgate/contract/validate.hpp"
#include "vaultgate/core/error.hpp"

namespace vaultgate::contract {
namespace {

constexpr const char* kC1 =
    R"(contract "c1" { principal "svc-reporting" purpose "q report" expires_in 3600s grant { source warehouse.orders columns [order_id, amount, created_at] where created_at >= 2025-01-01 } })";

SchemaCatalog orders_catalog() {
  SchemaCatalog cat;
  cat.add("warehouse.orders", TableSchema{{{"order_id", ColumnType::Int},
                                           {"customer", ColumnType::Text},
                                           {"amount", ColumnType::Int},
                                           {"created_at", ColumnType::Date}}});
  return cat;
}

// (line, column) of a byte offset, computed directly.
std::pair<std::size_t, std::size_t> position_of(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

TEST(ContractDsl, ParsesSingleGrantContract) {
  const auto c = parse_contract(kC1);
  EXPECT_EQ(c.contract_id, "c1");
  EXPECT_EQ(c.principal, "svc-reporting");
  EXPECT_EQ(c.purpose, "q report");
  EXPECT_EQ(c.ttl, 3600);
  EXPECT_EQ(c.status, Status::Draft);
  EXPECT_EQ(c.origin, Origin::Standard);
  EXPECT_FALSE(c.activated_at.has_value());
  ASSERT_EQ(c.grants.size(), 1u);
  const auto& g = c.grants[0];
  EXPECT_EQ(g.source, "warehouse.orders");
  EXPECT_EQ(std::get<std::vector<std::string>>(g.columns),
            (std::vector<std::string>{"order_id", "amount", "created_at"}));
  ASSERT_TRUE(g.row_predicate.has_value());
  ASSERT_EQ(g.row_predicate->conjuncts.size(), 1u);
  EXPECT_EQ(g.row_predicate->conjuncts[0].column, "created_at");
  EXPECT_EQ(g.row_predicate->conjuncts[0].op, CompareOp::Ge);
  EXPECT_EQ(std::get<Date>(g.row_predicate->conjuncts[0].literal), *parse_date("2025-01-01"));
}

TEST(ContractDsl, StarColumnsWithoutPredicate) {
  const auto c = parse_contract(R"(contract "c2" { principal "p" purpose "x" expires_in 60s grant { source a.t columns * } })");
  ASSERT_EQ(c.grants.size(), 1u);
  EXPECT_TRUE(c.grants[0].all_columns());
  EXPECT_FALSE(c.grants[0].row_predicate.has_value());
  EXPECT_EQ(c.ttl, 60);
}

TEST(ContractDsl, MissingClausesAreParseErrors) {
  const std::string text = R"(contract "c3" { principal "p" })";
  try {
    parse_contract(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), text.find('}') + 1);
    EXPECT_EQ(e.expected(), "'purpose'");
  }
}

TEST(ContractDsl, DurationUnitsAndComments) {
  const auto c = parse_contract(
      "# header comment\ncontract \"x\" {\n principal \"p\" purpose \"q\" expires_in 2h\n"
      " grant { source a.t columns [a] where a = -3 and b != \"z\" row_limit 10 } }\n");
  EXPECT_EQ(c.ttl, 7200);
  EXPECT_EQ(*c.grants[0].row_limit, 10);
  EXPECT_EQ(c.grants[0].row_predicate->conjuncts.size(), 2u);
  EXPECT_EQ(std::get<std::int64_t>(c.grants[0].row_predicate->conjuncts[0].literal), -3);
  EXPECT_EQ(parse_contract(R"(contract "m" { principal "p" purpose "q" expires_in 5m grant { source a.t columns * } })").ttl,
            300);
}

TEST(ContractDsl, PositionedErrorsForMalformedInputs) {
  // Each error must point at the first byte of `culprit` (its last
  // occurrence in the text), or at the end of input when culprit is empty.
  struct Case {
    std::string text;
    std::string culprit;
  };
  const std::vector<Case> cases = {
      {"", ""},
      {"contract c1 {", "c1 {"},
      {"contract \"c\" {\n  principal \"p\"\n  purpose \"q\"\n  expires_in 10 grant", "grant"},
      {"contract \"c\" { principal \"p\" purpose \"q\" expires_in 10s grant { source a columns * } }", "columns"},
      {"contract \"c\" { principal \"p\" purpose \"q\" expires_in 10s grant { source a.t columns * where x = 2024-02-30 } }",
       "2024-02-30"},
      {"contract \"c\" { principal \"p\" purpose \"q\" expires_in 10s grant { source a.t columns * row_limit 0 } }", "0 }"},
      {"contract \"c\" { principal \"p\" purpose \"q\" expires_in 10s grant { source a.t columns * } } extra", "extra"},
      {"contract \"unterminated", "\"unterminated"},
      {"contract \"c\" { principal \"bad\\q\" }", "\\q"},
      {"contract \"c\" { principal \"p\" purpose \"q\" expires_in 99999999999999999999s", "99999999999999999999s"},
      {"contract \"c\" { principal \"p\" purpose \"q\" expires_in 10d", "d"},
      {"contract \"c\" { principal \"p\" purpose \"q\" expires_in 10s grant { source a.t columns [] } }", "] }"},
      {"contract \"c\" { principal \"p\" purpose \"q\" expires_in 10s grant { source a.t columns * where a ~ 1 } }", "~"},
  };
  for (const auto& tc : cases) {
    const std::size_t want = tc.culprit.empty() ? tc.text.size() : tc.text.rfind(tc.culprit);
    ASSERT_NE(want, std::string::npos) << tc.culprit;
    try {
      parse_contract(tc.text);
      ADD_FAILURE() << "accepted: " << tc.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.offset(), want) << tc.text << " -> " << e.what();
      EXPECT_EQ(position_of(tc.text, e.offset()), std::make_pair(e.line(), e.column())) << e.what();
    }
  }
}

TEST(ContractDsl, MultiLineErrorPosition) {
  try {
    parse_contract("contract \"c\" {\n  principal \"p\"\n  purpose \"q\"\n  expires_in 10 grant");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 17u);
    EXPECT_EQ(e.found(), "identifier 'grant'");
  }
}

TEST(ContractDslProperty, PrintThenParseIsIdentity) {
  vgtest::Rng rng(0xC0417AC7);
  for (int i = 0; i < 1500; ++i) {
    const auto c = vgtest::any_contract(rng);
    const auto text = print_contract(c);
    DataContract back;
    ASSERT_NO_THROW(back = parse_contract(text)) << text;
    ASSERT_EQ(back, c) << text;
  }
}

TEST(ContractDslProperty, MutatedInputsFailWithConsistentPositions) {
  vgtest::Rng rng(77);
  int errors = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string text = print_contract(vgtest::any_contract(rng));
    switch (vgtest::below(rng, 3)) {
      case 0:
        text.resize(vgtest::below(rng, text.size()));
        break;
      case 1:
        text.insert(text.begin() + static_cast<std::ptrdiff_t>(vgtest::below(rng, text.size())),
                    static_cast<char>(vgtest::between(rng, 0, 255)));
        break;
      default:
        text.erase(vgtest::below(rng, text.size()), 1);
        break;
    }
    try {
      parse_contract(text);
    } catch (const ParseError& e) {
      ++errors;
      ASSERT_LE(e.offset(), text.size());
      ASSERT_EQ(position_of(text, e.offset()), std::make_pair(e.line(), e.column())) << text;
    }
  }
  EXPECT_GT(errors, 1000);
}

TEST(Validate, AcceptsContractMatchingCatalog) {
  const auto report = validate_contract(parse_contract(kC1), orders_catalog());
  EXPECT_TRUE(report.ok()) << report.summary();
}

TEST(Validate, ReportsEachProblem) {
  auto c = parse_contract(kC1);
  std::get<std::vector<std::string>>(c.grants[0].columns).push_back("price");
  EXPECT_TRUE(validate_contract(c, orders_catalog()).has(ProblemCode::UnknownColumn));

  c = parse_contract(kC1);
  c.grants[0].source = "warehouse.nope";
  EXPECT_TRUE(validate_contract(c, orders_catalog()).has(ProblemCode::UnknownSource));

  c = parse_contract(kC1);
  c.grants[0].row_predicate->conjuncts[0].literal = std::int64_t{5};
  EXPECT_TRUE(validate_contract(c, orders_catalog()).has(ProblemCode::TypeMismatch));

  c = parse_contract(kC1);
  c.grants[0].row_predicate->conjuncts[0].column = "price";
  EXPECT_TRUE(validate_contract(c, orders_catalog()).has(ProblemCode::UnknownColumn));

  c = parse_contract(kC1);
  c.ttl = 0;
  EXPECT_TRUE(validate_contract(c, orders_catalog()).has(ProblemCode::NonPositiveTtl));

  c = parse_contract(kC1);
  c.grants[0].columns = std::vector<std::string>{"amount", "amount"};
  EXPECT_TRUE(validate_contract(c, orders_catalog()).has(ProblemCode::DuplicateColumn));

  c = parse_contract(kC1);
  c.grants.clear();
  EXPECT_TRUE(validate_contract(c, orders_catalog()).has(ProblemCode::EmptyGrant));
}

TEST(ValidateProperty, OkImpliesEveryReferenceResolves) {
  vgtest::Rng rng(5);
  SchemaCatalog cat;
  std::vector<vgtest::GenTable> tables;
  for (int i = 0; i < 4; ++i) {
    auto t = vgtest::table(rng, 0);
    if (cat.contains(t.name)) continue;
    cat.add(t.name, t.schema);
    tables.push_back(t);
  }
  int ok = 0;
  for (int i = 0; i < 2000; ++i) {
    DataContract c;
    c.contract_id = "v";
    c.ttl = vgtest::between(rng, -1, 10);
    const std::size_t n = vgtest::below(rng, 3);
    for (std::size_t k = 0; k <= n; ++k) {
      const auto& t = vgtest::pick(rng, tables);
      Grant g;
      g.source = vgtest::chance(rng, 0.1) ? "ns.missing" : t.name;
      std::vector<std::string> cols;
      for (const auto& col : t.schema.columns) {
        if (vgtest::chance(rng, 0.5)) cols.push_back(col.name);
      }
      if (vgtest::chance(rng, 0.1)) cols.push_back("zz_missing");
      if (vgtest::chance(rng, 0.2)) {
        g.columns = AllColumns{};
      } else {
        g.columns = cols;
      }
      if (vgtest::chance(rng, 0.5)) {
        const auto& col = vgtest::pick(rng, t.schema.columns);
        const auto lit_type = vgtest::chance(rng, 0.8) ? col.type : vgtest::column_type(rng);
        g.row_predicate = Predicate{{{col.name, vgtest::compare_op(rng), vgtest::literal_of(rng, lit_type)}}};
      }
      c.grants.push_back(std::move(g));
    }
    if (!validate_contract(c, cat).ok()) continue;
    ++ok;
    // Exhaustive reference walk.
    ASSERT_GT(c.ttl, 0);
    for (const auto& g : c.grants) {
      const auto* schema = cat.find(g.source);
      ASSERT_NE(schema, nullptr);
      if (!g.all_columns()) {
        const auto& cols = std::get<std::vector<std::string>>(g.columns);
        ASSERT_FALSE(cols.empty());
        for (const auto& col : cols) ASSERT_NE(schema->find(col), nullptr) << col;
      }
      if (g.row_predicate) {
        for (const auto& cmp : g.row_predicate->conjuncts) {
          const auto* def = schema->find(cmp.column);
          ASSERT_NE(def, nullptr);
          ASSERT_TRUE(literal_fits(cmp.literal, def->type));
        }
      }
    }
  }
  EXPECT_GT(ok, 100);
}

TEST(Lifecycle, TransitionsAndLiveness) {
  auto c = parse_contract(kC1);
  EXPECT_FALSE(is_live(c, 0));
  auto a = activate(c, 100);
  EXPECT_EQ(a.status, Status::Active);
  EXPECT_EQ(*a.activated_at, 100);
  EXPECT_TRUE(is_live(a, 100));
  EXPECT_TRUE(is_live(a, 100 + 3599));
  EXPECT_FALSE(is_live(a, 100 + 3600));
  EXPECT_THROW(activate(a, 101), Error);
  EXPECT_THROW(expire(a, 200), Error);  // still live
  const auto e = expire(a, 3700);
  EXPECT_EQ(e.status, Status::Expired);
  EXPECT_THROW(revoke(e), Error);
  EXPECT_EQ(revoke(a).status, Status::Revoked);
  EXPECT_FALSE(is_live(revoke(a), 150));
  EXPECT_THROW(revoke(c), Error);
}

TEST(LifecycleProperty, StatusesFormAnAllowedPrefix) {
  vgtest::Rng rng(11);
  for (int run = 0; run < 500; ++run) {
    auto c = parse_contract(kC1);
    c.ttl = vgtest::between(rng, 1, 20);
    std::vector<Status> seen{c.status};
    Timestamp now = 0;
    for (int step = 0; step < 12; ++step) {
      now += vgtest::between(rng, 0, 8);
      try {
        switch (vgtest::below(rng, 3)) {
          case 0:
            c = activate(c, now);
            break;
          case 1:
            c = revoke(c);
            break;
          default:
            c = expire(c, now);
            break;
        }
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::StateError);
      }
      if (seen.back() != c.status) seen.push_back(c.status);
    }
    ASSERT_LE(seen.size(), 3u);
    ASSERT_EQ(seen[0], Status::Draft);
    if (seen.size() > 1) ASSERT_EQ(seen[1], Status::Active);
    if (seen.size() > 2) ASSERT_TRUE(seen[2] == Status::Expired || seen[2] == Status::Revoked);
  }
}

TEST(Codec, JsonRoundTripAndDeterminism) {
  vgtest::Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    auto c = vgtest::any_contract(rng);
    if (vgtest::chance(rng, 0.5)) c = activate(c, vgtest::between(rng, 0, 1000));
    const auto encoded = canonical_encode(c);
    EXPECT_EQ(encoded, canonical_encode(c));
    EXPECT_EQ(from_json(Json::parse(encoded)), c) << encoded;
  }
}

TEST(Codec, RejectsMalformedDocuments) {
  auto j = to_json(parse_contract(kC1));
  j.erase("ttl");
  EXPECT_THROW(from_json(j), Error);
  j = to_json(parse_contract(kC1));
  j["status"] = "Sleeping";
  EXPECT_THROW(from_json(j), Error);
  j = to_json(parse_contract(kC1));
  j["grants"][0]["where"][0]["value"]["type"] = "BLOB";
  EXPECT_THROW(from_json(j), Error);
}

TEST(ContractId, FileSafeIdentifiers) {
  EXPECT_TRUE(valid_contract_id("c1"));
  EXPECT_TRUE(valid_contract_id("ops.q3-report_2"));
  EXPECT_FALSE(valid_contract_id(""));
  EXPECT_FALSE(valid_contract_id("../etc"));
  EXPECT_FALSE(valid_contract_id("a/b"));
  EXPECT_FALSE(valid_contract_id(".hidden"));
  EXPECT_FALSE(valid_contract_id("sp ace"));
}

}  // namespace
}  // namespace vaultgate::contract
