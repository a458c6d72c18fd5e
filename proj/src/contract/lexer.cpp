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

#include "vaultgate/contract/lexer.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "vaultgate/core/error.hpp"

namespace vaultgate::lex {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

}  // namespace

Lexer::Lexer(std::string_view source, LexerOptions options)
    : source_(source), options_(options) {}

std::pair<std::size_t, std::size_t> Lexer::position(std::size_t offset) const {
  std::size_t line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < offset && i < source_.size(); ++i) {
    if (source_[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  return {line, offset - line_start + 1};
}

void Lexer::fail(const Token& at, std::string expected) const {
  throw ParseError(at.line, at.column, at.offset, std::move(expected), describe(at));
}

void Lexer::fail_at(std::size_t offset, std::string expected, std::string found) const {
  const auto [line, column] = position(offset);
  throw ParseError(line, column, offset, std::move(expected), std::move(found));
}

const Token& Lexer::peek() {
  if (!buffered_) buffered_ = lex();
  return *buffered_;
}

Token Lexer::next() {
  peek();
  Token t = std::move(*buffered_);
  buffered_.reset();
  return t;
}

std::string Lexer::rest_of_line() {
  if (buffered_) throw std::logic_error("rest_of_line with a buffered token");
  std::size_t end = source_.find('\n', pos_);
  if (end == std::string_view::npos) end = source_.size();
  std::string_view line = source_.substr(pos_, end - pos_);
  pos_ = end;
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return std::string(line.substr(first, last - first + 1));
}

void Lexer::skip_blank() {
  while (pos_ < source_.size()) {
    const char c = source_[pos_];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos_;
    } else if (c == '#' && options_.hash_comments) {
      while (pos_ < source_.size() && source_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }
}

Token Lexer::make(TokenKind kind, std::size_t start) const {
  Token t;
  t.kind = kind;
  t.offset = start;
  t.text = std::string(source_.substr(start, pos_ - start));
  const auto [line, column] = position(start);
  t.line = line;
  t.column = column;
  return t;
}

Token Lexer::lex() {
  skip_blank();
  const std::size_t start = pos_;
  if (pos_ >= source_.size()) return make(TokenKind::End, start);

  const char c = source_[pos_];
  if (ident_start(c)) {
    while (pos_ < source_.size() && ident_char(source_[pos_])) ++pos_;
    return make(TokenKind::Ident, start);
  }

  if (c == '"') {
    ++pos_;
    std::string decoded;
    while (true) {
      if (pos_ >= source_.size()) fail_at(start, "closing '\"'", "end of input");
      const char ch = source_[pos_++];
      if (ch == '"') break;
      if (ch != '\\') {
        decoded.push_back(ch);
        continue;
      }
      if (pos_ >= source_.size()) fail_at(start, "closing '\"'", "end of input");
      const char esc = source_[pos_++];
      switch (esc) {
        case '"':
          decoded.push_back('"');
          break;
        case '\\':
          decoded.push_back('\\');
          break;
        case 'n':
          decoded.push_back('\n');
          break;
        case 't':
          decoded.push_back('\t');
          break;
        case 'r':
          decoded.push_back('\r');
          break;
        default:
          fail_at(pos_ - 2, "escape sequence (\\\" \\\\ \\n \\t \\r)",
                  std::string("'\\") + esc + "'");
      }
    }
    Token t = make(TokenKind::String, start);
    t.value = std::move(decoded);
    return t;
  }

  const bool negative = c == '-' && pos_ + 1 < source_.size() && digit(source_[pos_ + 1]);
  if (digit(c) || negative) {
    // DATE: exactly dddd-dd-dd, not part of a longer word.
    if (!negative && pos_ + 10 <= source_.size()) {
      const std::string_view cand = source_.substr(pos_, 10);
      const bool shape = digit(cand[0]) && digit(cand[1]) && digit(cand[2]) && digit(cand[3]) &&
                         cand[4] == '-' && digit(cand[5]) && digit(cand[6]) && cand[7] == '-' &&
                         digit(cand[8]) && digit(cand[9]);
      const bool bounded = pos_ + 10 == source_.size() || !ident_char(source_[pos_ + 10]);
      if (shape && bounded) {
        const auto date = parse_date(cand);
        if (!date) fail_at(start, "valid calendar date", "'" + std::string(cand) + "'");
        pos_ += 10;
        Token t = make(TokenKind::Date, start);
        t.value = *date;
        return t;
      }
    }
    if (negative) ++pos_;
    while (pos_ < source_.size() && digit(source_[pos_])) ++pos_;
    bool decimal = false;
    if (pos_ + 1 < source_.size() && source_[pos_] == '.' && digit(source_[pos_ + 1])) {
      decimal = true;
      ++pos_;
      while (pos_ < source_.size() && digit(source_[pos_])) ++pos_;
    }
    const std::string_view raw = source_.substr(start, pos_ - start);
    if (decimal) {
      double v = 0;
      const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
      if (ec != std::errc{} || p != raw.data() + raw.size()) {
        fail_at(start, "representable decimal", "'" + std::string(raw) + "'");
      }
      Token t = make(TokenKind::Decimal, start);
      t.value = v;
      return t;
    }
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc{} || p != raw.data() + raw.size()) {
      fail_at(start, "64-bit integer", "'" + std::string(raw) + "'");
    }
    Token t = make(TokenKind::Integer, start);
    t.value = v;
    return t;
  }

  // Symbols; two-character operators first.
  if (pos_ + 1 < source_.size()) {
    const std::string_view two = source_.substr(pos_, 2);
    if (two == "!=" || two == "<=" || two == ">=") {
      pos_ += 2;
      return make(TokenKind::Symbol, start);
    }
  }
  static constexpr std::string_view kSingles = "{}[],.*=<>";
  if (kSingles.find(c) != std::string_view::npos) {
    ++pos_;
    return make(TokenKind::Symbol, start);
  }
  std::string found = "character '";
  found.push_back(c);
  found += "'";
  fail_at(start, "token", found);
}

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::End:
      return "end of input";
    case TokenKind::Ident:
      return "identifier '" + token.text + "'";
    case TokenKind::String:
      return "string " + token.text;
    case TokenKind::Integer:
      return "integer " + token.text;
    case TokenKind::Decimal:
      return "decimal " + token.text;
    case TokenKind::Date:
      return "date " + token.text;
    case TokenKind::Symbol:
      return "'" + token.text + "'";
  }
  return "token";
}

bool is_keyword(const Token& token, std::string_view keyword, bool case_sensitive) {
  if (token.kind != TokenKind::Ident) return false;
  return case_sensitive ? token.text == keyword : iequals(token.text, keyword);
}

bool is_symbol(const Token& token, std::string_view symbol) {
  return token.kind == TokenKind::Symbol && token.text == symbol;
}

void expect_keyword(Lexer& lexer, std::string_view keyword, bool case_sensitive) {
  const Token& t = lexer.peek();
  if (!is_keyword(t, keyword, case_sensitive)) lexer.fail(t, "'" + std::string(keyword) + "'");
  lexer.next();
}

void expect_symbol(Lexer& lexer, std::string_view symbol) {
  const Token& t = lexer.peek();
  if (!is_symbol(t, symbol)) lexer.fail(t, "'" + std::string(symbol) + "'");
  lexer.next();
}

std::string expect_ident(Lexer& lexer, std::string_view what) {
  const Token& t = lexer.peek();
  if (t.kind != TokenKind::Ident) lexer.fail(t, std::string(what));
  return lexer.next().text;
}

std::string expect_string(Lexer& lexer, std::string_view what) {
  const Token& t = lexer.peek();
  if (t.kind != TokenKind::String) lexer.fail(t, std::string(what));
  return std::get<std::string>(lexer.next().value);
}

std::int64_t expect_integer(Lexer& lexer, std::string_view what) {
  const Token& t = lexer.peek();
  if (t.kind != TokenKind::Integer) lexer.fail(t, std::string(what));
  return std::get<std::int64_t>(lexer.next().value);
}

Value parse_literal(Lexer& lexer) {
  const Token& t = lexer.peek();
  switch (t.kind) {
    case TokenKind::String:
    case TokenKind::Integer:
    case TokenKind::Decimal:
    case TokenKind::Date:
      return lexer.next().value;
    default:
      lexer.fail(t, "literal (string, integer, decimal or date)");
  }
}

Comparison parse_comparison(Lexer& lexer) {
  Comparison cmp;
  cmp.column = expect_ident(lexer, "column name");
  const Token& t = lexer.peek();
  const auto op = t.kind == TokenKind::Symbol ? parse_compare_op(t.text) : std::nullopt;
  if (!op) lexer.fail(t, "comparison operator (= != < <= > >=)");
  lexer.next();
  cmp.op = *op;
  cmp.literal = parse_literal(lexer);
  return cmp;
}

Predicate parse_conjunction(Lexer& lexer, std::string_view and_keyword, bool case_sensitive) {
  Predicate p;
  p.conjuncts.push_back(parse_comparison(lexer));
  while (is_keyword(lexer.peek(), and_keyword, case_sensitive)) {
    lexer.next();
    p.conjuncts.push_back(parse_comparison(lexer));
  }
  return p;
}

std::string quote_string(std::string_view raw) {
  std::string out = "\"";
  for (char c : raw) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string print_literal(const Value& literal) {
  if (const auto* s = std::get_if<std::string>(&literal)) return quote_string(*s);
  return format_value(literal);
}

std::string print_conjunction(const Predicate& predicate, std::string_view and_keyword) {
  std::string out;
  for (std::size_t i = 0; i < predicate.conjuncts.size(); ++i) {
    const auto& c = predicate.conjuncts[i];
    if (i > 0) {
      out += ' ';
      out += and_keyword;
      out += ' ';
    }
    out += c.column;
    out += ' ';
    out += to_string(c.op);
    out += ' ';
    out += print_literal(c.literal);
  }
  return out;
}

}  // namespace vaultgate::lex
