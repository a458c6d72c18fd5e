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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "vaultgate/core/predicate.hpp"
#include "vaultgate/core/value.hpp"

// Tokenizer shared by the contract DSL and the gateway query language. The
// two grammars use identical comparison and literal forms.
namespace vaultgate::lex {

enum class TokenKind { Ident, String, Integer, Decimal, Date, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier/symbol spelling, or the raw literal
  Value value;       // decoded literal for String/Integer/Decimal/Date
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct LexerOptions {
  bool hash_comments = true;
};

// Lazy, one-token-lookahead lexer. Lexical errors surface as ParseError when
// the offending token is first peeked.
class Lexer {
 public:
  explicit Lexer(std::string_view source, LexerOptions options = {});

  const Token& peek();
  Token next();

  // Raw text from the current position up to the end of the line, with
  // surrounding blanks trimmed. Requires that nothing is buffered by peek().
  std::string rest_of_line();

  [[noreturn]] void fail(const Token& at, std::string expected) const;
  [[noreturn]] void fail_at(std::size_t offset, std::string expected, std::string found) const;

  std::string_view source() const noexcept { return source_; }

 private:
  Token lex();
  void skip_blank();
  Token make(TokenKind kind, std::size_t start) const;
  std::pair<std::size_t, std::size_t> position(std::size_t offset) const;

  std::string_view source_;
  LexerOptions options_;
  std::size_t pos_ = 0;
  std::optional<Token> buffered_;
};

std::string describe(const Token& token);

bool is_keyword(const Token& token, std::string_view keyword, bool case_sensitive);
bool is_symbol(const Token& token, std::string_view symbol);

// Consume helpers; each throws ParseError naming what was expected.
void expect_keyword(Lexer& lexer, std::string_view keyword, bool case_sensitive);
void expect_symbol(Lexer& lexer, std::string_view symbol);
std::string expect_ident(Lexer& lexer, std::string_view what = "identifier");
std::string expect_string(Lexer& lexer, std::string_view what = "string");
std::int64_t expect_integer(Lexer& lexer, std::string_view what = "integer");

Value parse_literal(Lexer& lexer);
Comparison parse_comparison(Lexer& lexer);
// comparison (AND comparison)*; `and_keyword` is matched per case_sensitive.
Predicate parse_conjunction(Lexer& lexer, std::string_view and_keyword, bool case_sensitive);

// Printer counterparts producing text the parsers accept.
std::string quote_string(std::string_view raw);
std::string print_literal(const Value& literal);
std::string print_conjunction(const Predicate& predicate, std::string_view and_keyword);

}  // namespace vaultgate::lex
