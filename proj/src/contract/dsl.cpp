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

#include "vaultgate/contract/dsl.hpp"

#include <limits>

#include "vaultgate/contract/lexer.hpp"
#include "vaultgate/core/error.hpp"

namespace vaultgate::contract {

namespace {

using lex::Lexer;
using lex::TokenKind;

constexpr bool kCaseSensitive = true;

std::int64_t parse_ttl(Lexer& lexer) {
  lex::expect_keyword(lexer, "expires_in", kCaseSensitive);
  const lex::Token amount_tok = lexer.peek();
  const std::int64_t amount = lex::expect_integer(lexer, "duration");
  const lex::Token& unit = lexer.peek();
  std::int64_t scale = 0;
  if (lex::is_keyword(unit, "s", kCaseSensitive)) {
    scale = 1;
  } else if (lex::is_keyword(unit, "m", kCaseSensitive)) {
    scale = 60;
  } else if (lex::is_keyword(unit, "h", kCaseSensitive)) {
    scale = 3600;
  } else {
    lexer.fail(unit, "duration unit (s, m or h)");
  }
  lexer.next();
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
  if (amount > kMax / scale || amount < kMin / scale) lexer.fail(amount_tok, "duration in range");
  return amount * scale;
}

Grant parse_grant(Lexer& lexer) {
  Grant g;
  lex::expect_keyword(lexer, "grant", kCaseSensitive);
  lex::expect_symbol(lexer, "{");

  lex::expect_keyword(lexer, "source", kCaseSensitive);
  std::string ns = lex::expect_ident(lexer, "source namespace");
  lex::expect_symbol(lexer, ".");
  std::string table = lex::expect_ident(lexer, "source table");
  g.source = ns + "." + table;

  lex::expect_keyword(lexer, "columns", kCaseSensitive);
  if (lex::is_symbol(lexer.peek(), "*")) {
    lexer.next();
    g.columns = AllColumns{};
  } else {
    lex::expect_symbol(lexer, "[");
    std::vector<std::string> cols;
    cols.push_back(lex::expect_ident(lexer, "column name"));
    while (lex::is_symbol(lexer.peek(), ",")) {
      lexer.next();
      cols.push_back(lex::expect_ident(lexer, "column name"));
    }
    lex::expect_symbol(lexer, "]");
    g.columns = std::move(cols);
  }

  if (lex::is_keyword(lexer.peek(), "where", kCaseSensitive)) {
    lexer.next();
    g.row_predicate = lex::parse_conjunction(lexer, "and", kCaseSensitive);
  }
  if (lex::is_keyword(lexer.peek(), "row_limit", kCaseSensitive)) {
    lexer.next();
    const lex::Token at = lexer.peek();
    const std::int64_t limit = lex::expect_integer(lexer, "row limit");
    if (limit <= 0) lexer.fail(at, "positive row limit");
    g.row_limit = limit;
  }
  lex::expect_symbol(lexer, "}");
  return g;
}

}  // namespace

DataContract parse_contract(std::string_view text) {
  Lexer lexer(text);
  DataContract c;
  lex::expect_keyword(lexer, "contract", kCaseSensitive);
  c.contract_id = lex::expect_string(lexer, "contract id string");
  lex::expect_symbol(lexer, "{");
  lex::expect_keyword(lexer, "principal", kCaseSensitive);
  c.principal = lex::expect_string(lexer, "principal string");
  lex::expect_keyword(lexer, "purpose", kCaseSensitive);
  c.purpose = lex::expect_string(lexer, "purpose string");
  c.ttl = parse_ttl(lexer);
  c.grants.push_back(parse_grant(lexer));
  while (lex::is_keyword(lexer.peek(), "grant", kCaseSensitive)) {
    c.grants.push_back(parse_grant(lexer));
  }
  lex::expect_symbol(lexer, "}");
  const lex::Token& end = lexer.peek();
  if (end.kind != TokenKind::End) lexer.fail(end, "end of input");
  c.status = Status::Draft;
  c.origin = Origin::Standard;
  return c;
}

std::string print_contract(const DataContract& c) {
  std::string out = "contract " + lex::quote_string(c.contract_id) + " {\n";
  out += "  principal " + lex::quote_string(c.principal) + "\n";
  out += "  purpose " + lex::quote_string(c.purpose) + "\n";
  out += "  expires_in " + std::to_string(c.ttl) + "s\n";
  for (const auto& g : c.grants) {
    out += "  grant {\n";
    out += "    source " + g.source + "\n";
    if (g.all_columns()) {
      out += "    columns *\n";
    } else {
      out += "    columns [";
      const auto& cols = std::get<std::vector<std::string>>(g.columns);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i > 0) out += ", ";
        out += cols[i];
      }
      out += "]\n";
    }
    if (g.row_predicate) out += "    where " + lex::print_conjunction(*g.row_predicate, "and") + "\n";
    if (g.row_limit) out += "    row_limit " + std::to_string(*g.row_limit) + "\n";
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

}  // namespace vaultgate::contract
