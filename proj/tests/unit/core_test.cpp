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

#include "vaultgate/core/canonical_json.hpp"
#include "vaultgate/core/catalog.hpp"
#include "vaultgate/core/error.hpp"
#include "vaultgate/core/predicate.hpp"
#include "vaultgate/core/sha256.hpp"
#include "vaultgate/core/value.hpp"

namespace vaultgate {
namespace {

TEST(Date, ParsesAndFormatsCalendarDays) {
  EXPECT_EQ(parse_date("1970-01-01")->days, 0);
  EXPECT_EQ(parse_date("1970-01-02")->days, 1);
  EXPECT_EQ(parse_date("1969-12-31")->days, -1);
  EXPECT_EQ(parse_date("2000-03-01")->days, 11017);
  EXPECT_EQ(format_date(*parse_date("2024-02-29")), "2024-02-29");
  EXPECT_EQ(format_date(Date{-25567}), "1900-01-01");
}

TEST(Date, RejectsMalformedText) {
  for (const char* bad : {"2023-02-29", "2024-13-01", "2024-00-10", "2024-1-01", "24-01-01", "2024-01-32",
                          "2024/01/01", "", "2024-01-01x"}) {
    EXPECT_FALSE(parse_date(bad).has_value()) << bad;
  }
}

TEST(Value, LiteralFitsRespectsColumnTypes) {
  EXPECT_TRUE(literal_fits(std::int64_t{1}, ColumnType::Int));
  EXPECT_TRUE(literal_fits(std::int64_t{1}, ColumnType::Real));
  EXPECT_FALSE(literal_fits(1.5, ColumnType::Int));
  EXPECT_TRUE(literal_fits(1.5, ColumnType::Real));
  EXPECT_FALSE(literal_fits(std::string("x"), ColumnType::Date));
  EXPECT_TRUE(literal_fits(Date{3}, ColumnType::Date));
}

TEST(Value, CompareMixesIntegersAndReals) {
  EXPECT_EQ(compare_values(std::int64_t{2}, 2.0), std::weak_ordering::equivalent);
  EXPECT_EQ(compare_values(2.5, std::int64_t{2}), std::weak_ordering::greater);
  EXPECT_EQ(compare_values(std::string("b"), std::string("a")), std::weak_ordering::greater);
  // UTF-8 bytes sort above ASCII.
  EXPECT_EQ(compare_values(std::string("\xc3\xa9"), std::string("z")), std::weak_ordering::greater);
  EXPECT_THROW(compare_values(std::string("a"), std::int64_t{1}), std::logic_error);
}

TEST(Value, DecimalFormattingAlwaysHasPoint) {
  EXPECT_EQ(format_decimal(2.0), "2.0");
  EXPECT_EQ(format_decimal(-0.5), "-0.5");
  EXPECT_EQ(format_decimal(0.1), "0.1");
}

TEST(Predicate, HoldsFollowsOrdering) {
  EXPECT_TRUE(holds(CompareOp::Le, std::weak_ordering::equivalent));
  EXPECT_FALSE(holds(CompareOp::Lt, std::weak_ordering::equivalent));
  EXPECT_TRUE(holds(CompareOp::Ne, std::weak_ordering::less));
  EXPECT_EQ(parse_compare_op("!="), CompareOp::Ne);
  EXPECT_FALSE(parse_compare_op("<>").has_value());
}

TEST(Catalog, RejectsDuplicatesAndBadNames) {
  SchemaCatalog cat;
  cat.add("warehouse.orders", TableSchema{{{"order_id", ColumnType::Int}}});
  EXPECT_TRUE(cat.contains("warehouse.orders"));
  try {
    cat.add("warehouse.orders", TableSchema{{{"x", ColumnType::Int}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateTable);
  }
  EXPECT_THROW(cat.add("orders", TableSchema{{{"x", ColumnType::Int}}}), Error);
  EXPECT_THROW(cat.add("a.b", TableSchema{{{"x", ColumnType::Int}, {"x", ColumnType::Text}}}), Error);
  EXPECT_EQ(split_qualified("a.b")->second, "b");
  EXPECT_FALSE(split_qualified("a.b.c").has_value());
}

TEST(CanonicalJson, SortsKeysWithoutWhitespace) {
  Json j = {{"b", 1}, {"a", {{"d", true}, {"c", nullptr}}}};
  EXPECT_EQ(canonical_dump(j), R"({"a":{"c":null,"d":true},"b":1})");
}

TEST(Sha256, MatchesPublishedVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(ErrorCode, NamesRoundTrip) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::Internal); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    EXPECT_EQ(parse_error_code(to_string(code)), code);
  }
}

TEST(ParseErrorMessage, CarriesPosition) {
  ParseError e(3, 7, 20, "'}'", "end of input");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_STREQ(e.what(), "line 3, column 7: expected '}', found end of input");
}

}  // namespace
}  // namespace vaultgate
