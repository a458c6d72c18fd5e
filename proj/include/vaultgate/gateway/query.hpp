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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/core/predicate.hpp"

namespace vaultgate::gateway {

enum class StatementKind { Select, ShowTables, CopyInto };

std::string_view to_string(StatementKind kind) noexcept;

struct QueryAst {
  StatementKind kind = StatementKind::Select;
  // Select only. An empty optional means `*`.
  std::optional<std::vector<std::string>> columns;
  std::string table;
  std::optional<Predicate> where;
  std::optional<std::int64_t> limit;
  // CopyInto only: everything after INTO, trimmed. Never executed.
  std::string copy_target;

  bool star() const noexcept { return kind == StatementKind::Select && !columns; }

  friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

// statement = SELECT (* | col, ...) FROM table [WHERE cmp (AND cmp)*] [LIMIT n]
//           | SHOW TABLES
//           | COPY INTO <rest of line>
// Keywords are case-insensitive, identifiers case-sensitive. Throws
// ParseError with the failing position.
QueryAst parse_query(std::string_view text);

std::string print_query(const QueryAst& ast);

}  // namespace vaultgate::gateway
