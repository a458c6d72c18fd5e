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

#include "vaultgate/core/catalog.hpp"

#include <set>

#include "vaultgate/core/error.hpp"

namespace vaultgate {

std::optional<std::size_t> TableSchema::index_of(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  return std::nullopt;
}

const ColumnDef* TableSchema::find(std::string_view name) const noexcept {
  const auto idx = index_of(name);
  return idx ? &columns[*idx] : nullptr;
}

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  for (char c : text) {
    if (!alpha(c) && !digit(c)) return false;
  }
  return true;
}

std::optional<std::pair<std::string, std::string>> split_qualified(std::string_view name) {
  const auto dot = name.find('.');
  if (dot == std::string_view::npos) return std::nullopt;
  const auto ns = name.substr(0, dot);
  const auto table = name.substr(dot + 1);
  if (!is_identifier(ns) || !is_identifier(table)) return std::nullopt;
  return std::make_pair(std::string(ns), std::string(table));
}

void SchemaCatalog::add(const std::string& qualified_name, TableSchema schema) {
  if (!split_qualified(qualified_name)) {
    throw Error(ErrorCode::BadConfig, "malformed table name '" + qualified_name + "'");
  }
  if (tables_.count(qualified_name) != 0) {
    throw Error(ErrorCode::DuplicateTable, "table '" + qualified_name + "' already registered");
  }
  std::set<std::string, std::less<>> seen;
  for (const auto& col : schema.columns) {
    if (!is_identifier(col.name)) {
      throw Error(ErrorCode::BadConfig, "malformed column name '" + col.name + "'");
    }
    if (!seen.insert(col.name).second) {
      throw Error(ErrorCode::BadConfig, "duplicate column '" + col.name + "' in " + qualified_name);
    }
  }
  tables_.emplace(qualified_name, std::move(schema));
}

const TableSchema* SchemaCatalog::find(std::string_view qualified_name) const noexcept {
  const auto it = tables_.find(qualified_name);
  return it == tables_.end() ? nullptr : &it->second;
}

std::vector<std::string> SchemaCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(tables_.size());
  for (const auto& [name, _] : tables_) out.push_back(name);
  return out;
}

}  // namespace vaultgate
