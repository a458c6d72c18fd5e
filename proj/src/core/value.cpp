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

#include "vaultgate/core/value.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace vaultgate {

std::string_view to_string(ColumnType type) noexcept {
  switch (type) {
    case ColumnType::Int:
      return "INT";
    case ColumnType::Text:
      return "TEXT";
    case ColumnType::Date:
      return "DATE";
    case ColumnType::Real:
      return "REAL";
  }
  return "TEXT";
}

std::optional<ColumnType> parse_column_type(std::string_view name) noexcept {
  if (name == "INT") return ColumnType::Int;
  if (name == "TEXT") return ColumnType::Text;
  if (name == "DATE") return ColumnType::Date;
  if (name == "REAL") return ColumnType::Real;
  return std::nullopt;
}

std::optional<Date> parse_date(std::string_view text) noexcept {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto digits = [&](std::size_t pos, std::size_t len, int& out) {
    out = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return false;
      out = out * 10 + (text[i] - '0');
    }
    return true;
  };
  int y = 0, m = 0, d = 0;
  if (!digits(0, 4, y) || !digits(5, 2, m) || !digits(8, 2, d)) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{static_cast<std::int32_t>(sys_days{ymd}.time_since_epoch().count())};
}

std::string format_date(Date date) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days{days{date.days}}};
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return std::string(buf.data());
}

ColumnType type_of(const Value& value) noexcept {
  switch (value.index()) {
    case 0:
      return ColumnType::Int;
    case 1:
      return ColumnType::Real;
    case 2:
      return ColumnType::Text;
    default:
      return ColumnType::Date;
  }
}

bool literal_fits(const Value& literal, ColumnType column) noexcept {
  const ColumnType lt = type_of(literal);
  return lt == column || (lt == ColumnType::Int && column == ColumnType::Real);
}

namespace {

std::weak_ordering compare_doubles(double a, double b) {
  if (a < b) return std::weak_ordering::less;
  if (a > b) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

}  // namespace

std::weak_ordering compare_values(const Value& lhs, const Value& rhs) {
  if (const auto* a = std::get_if<std::int64_t>(&lhs)) {
    if (const auto* b = std::get_if<std::int64_t>(&rhs)) return *a <=> *b;
    if (const auto* b = std::get_if<double>(&rhs)) return compare_doubles(static_cast<double>(*a), *b);
  } else if (const auto* a = std::get_if<double>(&lhs)) {
    if (const auto* b = std::get_if<double>(&rhs)) return compare_doubles(*a, *b);
    if (const auto* b = std::get_if<std::int64_t>(&rhs)) return compare_doubles(*a, static_cast<double>(*b));
  } else if (const auto* a = std::get_if<std::string>(&lhs)) {
    if (const auto* b = std::get_if<std::string>(&rhs)) {
      const int c = a->compare(*b);
      return c < 0 ? std::weak_ordering::less
                   : (c > 0 ? std::weak_ordering::greater : std::weak_ordering::equivalent);
    }
  } else if (const auto* a = std::get_if<Date>(&lhs)) {
    if (const auto* b = std::get_if<Date>(&rhs)) return a->days <=> b->days;
  }
  throw std::logic_error("compare_values: incompatible value types");
}

std::string format_decimal(double value) {
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc{}) throw std::length_error("format_decimal: value too long");
  std::string out(buf.data(), end);
  if (out.find('.') == std::string::npos) out += ".0";
  return out;
}

std::string format_value(const Value& value) {
  switch (value.index()) {
    case 0:
      return std::to_string(std::get<std::int64_t>(value));
    case 1:
      return format_decimal(std::get<double>(value));
    case 2:
      return std::get<std::string>(value);
    default:
      return format_date(std::get<Date>(value));
  }
}

}  // namespace vaultgate
