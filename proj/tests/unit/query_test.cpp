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
#include "support/properties.hpp"
#include "vaultgate/gateway/query.hpp"

namespace vaultgate::gateway {
namespace {

TEST(Query, SelectWithEverything) {
  const auto q = parse_query("SELECT order_id, amount FROM orders WHERE amount > 100 AND created_at >= 2025-01-01 LIMIT 5");
  EXPECT_EQ(q.kind, StatementKind::Select);
  EXPECT_EQ(q.columns, (std::vector<std::string>{"order_id", "amount"}));
  EXPECT_EQ(q.table, "orders");
  ASSERT_TRUE(q.where.has_value());
  ASSERT_EQ(q.where->conjuncts.size(), 2u);
  EXPECT_EQ(q.where->conjuncts[0].op, CompareOp::Gt);
  EXPECT_EQ(q.where->conjuncts[1].literal, Value(*parse_date("2025-01-01")));
  EXPECT_EQ(q.limit, 5);
}

TEST(Query, KeywordsAreCaseInsensitive) {
  EXPECT_EQ(parse_query("select * from t where a = \"x\" limit 1"),
            parse_query("SELECT * FROM t WHERE a = \"x\" LIMIT 1"));
  EXPECT_EQ(parse_query("show tables").kind, StatementKind::ShowTables);
}

TEST(Query, StarAndShowTables) {
  const auto q = parse_query("SELECT * FROM orders");
  EXPECT_TRUE(q.star());
  EXPECT_EQ(parse_query("  SHOW\n TABLES  ").kind, StatementKind::ShowTables);
  EXPECT_THROW(parse_query("SHOW TABLES;"), ParseError);
  EXPECT_THROW(parse_query("SELECT * FROM t WHERE a = 'x'"), ParseError);
}

TEST(Query, CopyIntoKeepsTargetVerbatim) {
  const auto q = parse_query("COPY INTO s3://bucket/x FROM orders");
  EXPECT_EQ(q.kind, StatementKind::CopyInto);
  EXPECT_FALSE(q.copy_target.empty());
  EXPECT_EQ(q.copy_target.find("s3://bucket/x"), 0u);
}

TEST(Query, LiteralKinds) {
  const auto q = parse_query("SELECT * FROM t WHERE a = -3 AND b = 2.5 AND c = \"s\" AND d != 2024-02-29");
  const auto& c = q.where->conjuncts;
  EXPECT_EQ(c[0].literal, Value(std::int64_t{-3}));
  EXPECT_EQ(c[1].literal, Value(2.5));
  EXPECT_EQ(c[2].literal, Value(std::string("s")));
  EXPECT_EQ(c[3].op, CompareOp::Ne);
}

TEST(Query, ErrorsArePositioned) {
  try {
    parse_query("SELECT * FROM t WHERE a =");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 26u);
    EXPECT_EQ(e.offset(), 25u);
  }
  try {
    parse_query("SELECT *\nFROM t\nLIMIT zero");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 7u);
  }
}

TEST(QueryProperty, PrintParseRoundTrip) {
  vgtest::Rng rng(31);
  for (int i = 0; i < 1500; ++i) {
    const auto q = vgtest::any_query(rng);
    const auto text = print_query(q);
    ASSERT_EQ(parse_query(text), q) << text;
    EXPECT_EQ(print_query(parse_query(text)), text);
  }
}

TEST(QueryProperty, MutationsFailCleanly) {
  vgtest::Rng rng(32);
  for (int i = 0; i < 3000; ++i) {
    const auto text = vgtest::mutate(rng, print_query(vgtest::any_query(rng)));
    try {
      parse_query(text);
    } catch (const ParseError& e) {
      ASSERT_TRUE(vgtest::position_consistent(text, e)) << text;
    }
  }
}

}  // namespace
}  // namespace vaultgate::gateway
