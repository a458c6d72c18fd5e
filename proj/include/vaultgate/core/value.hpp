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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace vaultgate {

// Logical-clock seconds.
using Timestamp = std::int64_t;

enum class ColumnType { Int, Text, Date, Real };

std::string_view to_string(ColumnType type) noexcept;
std::optional<ColumnType> parse_column_type(std::string_view name) noexcept;

// Calendar date stored as days since 1970-01-01.
struct Date {
  std::int32_t days = 0;

  friend auto operator<=>(const Date&, const Date&) = default;
};

// Strict YYYY-MM-DD; rejects out-of-range months and days.
std::optional<Date> parse_date(std::string_view text) noexcept;
std::string format_date(Date date);

// A typed cell or literal. int64 is INT (or an INTEGER literal), double is
// REAL (or a DECIMAL literal), string is TEXT, Date is DATE.
using Value = std::variant<std::int64_t, double, std::string, Date>;

ColumnType type_of(const Value& value) noexcept;

// Literal-to-column compatibility: INTEGER literals also fit REAL columns.
bool literal_fits(const Value& literal, ColumnType column) noexcept;

// Total order between a cell and a literal already checked by literal_fits.
// Numbers compare numerically, TEXT by code point (UTF-8 byte order), DATE by
// day number.
std::weak_ordering compare_values(const Value& lhs, const Value& rhs);

// Shortest round-tripping fixed notation, always containing a '.'.
std::string format_decimal(double value);

// Human/debug rendering; TEXT is returned raw (unquoted).
std::string format_value(const Value& value);

}  // namespace vaultgate
