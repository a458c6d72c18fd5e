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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vaultgate/core/value.hpp"

namespace vaultgate {

struct ColumnDef {
  std::string name;
  ColumnType type = ColumnType::Text;

  friend bool operator==(const ColumnDef&, const ColumnDef&) = default;
};

struct TableSchema {
  std::vector<ColumnDef> columns;

  std::optional<std::size_t> index_of(std::string_view name) const noexcept;
  const ColumnDef* find(std::string_view name) const noexcept;

  friend bool operator==(const TableSchema&, const TableSchema&) = default;
};

bool is_identifier(std::string_view text) noexcept;

// "namespace.table" with both parts identifiers.
std::optional<std::pair<std::string, std::string>> split_qualified(std::string_view name);

// Qualified table name -> ordered column list.
class SchemaCatalog {
 public:
  // Throws Error{DuplicateTable} on reuse, Error{BadConfig} on a malformed
  // name or duplicate column.
  void add(const std::string& qualified_name, TableSchema schema);

  const TableSchema* find(std::string_view qualified_name) const noexcept;
  bool contains(std::string_view qualified_name) const noexcept {
    return find(qualified_name) != nullptr;
  }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, TableSchema, std::less<>> tables_;
};

}  // namespace vaultgate
