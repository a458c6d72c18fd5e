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

#include "vaultgate/gateway/query.hpp"

#include "vaultgate/contract/lexer.hpp"
#include "vaultgate/core/error.hpp"

namespace vaultgate::gateway {

namespace {

constexpr bool kCaseSensitive = false;

}  // namespace

std::string_view to_string(StatementKind kind) noexcept {
  switch (kind) {
    case StatementKind::Select:
      return "Select";
    case StatementKind::ShowTables:
      return "ShowTables";
    case StatementKind::CopyInto:
      return "CopyInto";
  }
  return "Select";
}

QueryAst parse_query(std::string_view text) {
  lex::Lexer lexer(text, lex::LexerOptions{.hash_comments = false});
  QueryAst ast;
  const lex::Token& first = lexer.peek();

  if (lex::is_keyword(first, "SHOW", kCaseSensitive)) {
    lexer.next();
    lex::expect_keyword(lexer, "TABLES", kCaseSensitive);
    ast.kind = StatementKind::ShowTables;
  } else if (lex::is_keyword(first, "COPY", kCaseSensitive)) {
    lexer.next();
    lex::expect_keyword(lexer, "INTO", kCaseSensitive);
    ast.kind = StatementKind::CopyInto;
    const std::size_t at = text.size();
    ast.copy_target = lexer.rest_of_line();
    if (ast.copy_target.empty()) lexer.fail_at(at, "copy target", "end of line");
  } else if (lex::is_keyword(first, "SELECT", kCaseSensitive)) {
    lexer.next();
    ast.kind = StatementKind::Select;
    if (lex::is_symbol(lexer.peek(), "*")) {
      lexer.next();
    } else {
      std::vector<std::string> cols;
      cols.push_back(lex::expect_ident(lexer, "column name or '*'"));
      while (lex::is_symbol(lexer.peek(), ",")) {
        lexer.next();
        cols.push_back(lex::expect_ident(lexer, "column name"));
      }
      ast.columns = std::move(cols);
    }
    lex::expect_keyword(lexer, "FROM", kCaseSensitive);
    ast.table = lex::expect_ident(lexer, "table name");
    if (lex::is_keyword(lexer.peek(), "WHERE", kCaseSensitive)) {
      lexer.next();
      ast.where = lex::parse_conjunction(lexer, "AND", kCaseSensitive);
    }
    if (lex::is_keyword(lexer.peek(), "LIMIT", kCaseSensitive)) {
      lexer.next();
      const lex::Token at = lexer.peek();
      const auto limit = lex::expect_integer(lexer, "row count");
      if (limit <= 0) lexer.fail(at, "positive row count");
      ast.limit = limit;
    }
  } else {
    lexer.fail(first, "SELECT, SHOW TABLES or COPY INTO");
  }

  const lex::Token& end = lexer.peek();
  if (end.kind != lex::TokenKind::End) lexer.fail(end, "end of statement");
  return ast;
}

std::string print_query(const QueryAst& ast) {
  switch (ast.kind) {
    case StatementKind::ShowTables:
      return "SHOW TABLES";
    case StatementKind::CopyInto:
      return "COPY INTO " + ast.copy_target;
    case StatementKind::Select:
      break;
  }
  std::string out = "SELECT ";
  if (!ast.columns) {
    out += "*";
  } else {
    for (std::size_t i = 0; i < ast.columns->size(); ++i) {
      if (i > 0) out += ", ";
      out += (*ast.columns)[i];
    }
  }
  out += " FROM " + ast.table;
  if (ast.where) out += " WHERE " + lex::print_conjunction(*ast.where, "AND");
  if (ast.limit) out += " LIMIT " + std::to_string(*ast.limit);
  return out;
}

}  // namespace vaultgate::gateway
