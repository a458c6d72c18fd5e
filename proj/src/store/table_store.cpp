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

#include "vaultgate/store/table_store.hpp"

#include <cmath>

#include "vaultgate/core/error.hpp"

namespace vaultgate::store {

std::vector<std::string> Segment::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns.size());
  for (const auto& c : columns) out.push_back(c.name);
  return out;
}

CompiledPredicate::CompiledPredicate(const Predicate& predicate, std::span<const ColumnDef> columns) {
  terms_.reserve(predicate.conjuncts.size());
  for (const auto& cmp : predicate.conjuncts) {
    std::size_t idx = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i].name == cmp.column) {
        idx = i;
        break;
      }
    }
    if (idx == columns.size()) {
      throw Error(ErrorCode::UnknownColumn, "predicate names unknown column '" + cmp.column + "'");
    }
    if (!literal_fits(cmp.literal, columns[idx].type)) {
      throw Error(ErrorCode::TypeMismatch, "literal does not match type of column '" + cmp.column + "'");
    }
    terms_.push_back({idx, cmp.op, cmp.literal});
  }
}

bool CompiledPredicate::operator()(std::span<const Value> row) const {
  for (const auto& t : terms_) {
    if (!holds(t.op, compare_values(row[t.index], t.literal))) return false;
  }
  return true;
}

bool eval_predicate(std::span<const Value> row, std::span<const ColumnDef> columns,
                    const Predicate& predicate) {
  return CompiledPredicate(predicate, columns)(row);
}

void check_row(const Row& row, const TableSchema& schema, std::string_view table) {
  if (row.size() != schema.columns.size()) {
    throw Error(ErrorCode::TypeMismatch, "row arity " + std::to_string(row.size()) + " != " +
                                             std::to_string(schema.columns.size()) + " in " +
                                             std::string(table));
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    const ColumnDef& col = schema.columns[i];
    if (type_of(row[i]) != col.type) {
      throw Error(ErrorCode::TypeMismatch, std::string(table) + "." + col.name + " expects " +
                                               std::string(to_string(col.type)));
    }
    if (const auto* d = std::get_if<double>(&row[i]); d != nullptr && !std::isfinite(*d)) {
      throw Error(ErrorCode::TypeMismatch, std::string(table) + "." + col.name + " is not finite");
    }
  }
}

void TabularStore::register_table(const std::string& name, TableSchema schema, std::vector<Row> rows) {
  if (catalog_.contains(name)) {
    throw Error(ErrorCode::DuplicateTable, "table '" + name + "' already registered");
  }
  for (const auto& row : rows) check_row(row, schema, name);
  catalog_.add(name, schema);
  tables_.emplace(name, Table{std::move(schema), std::move(rows)});
}

void TabularStore::append_rows(std::string_view name, std::vector<Row> rows) {
  const auto it = tables_.find(name);
  if (it == tables_.end()) throw Error(ErrorCode::UnknownSource, "no table '" + std::string(name) + "'");
  for (const auto& row : rows) check_row(row, it->second.schema, name);
  for (auto& row : rows) it->second.rows.push_back(std::move(row));
}

Segment TabularStore::extract_segment(std::string_view name, const contract::Grant& grant,
                                      Timestamp now) const {
  const auto it = tables_.find(name);
  if (it == tables_.end()) throw Error(ErrorCode::UnknownSource, "no table '" + std::string(name) + "'");
  ++accesses_;
  const Table& table = it->second;

  std::vector<std::size_t> projection;
  Segment seg;
  seg.origin = std::string(name);
  seg.extracted_at = now;
  if (grant.all_columns()) {
    seg.columns = table.schema.columns;
    for (std::size_t i = 0; i < seg.columns.size(); ++i) projection.push_back(i);
  } else {
    for (const auto& col : std::get<std::vector<std::string>>(grant.columns)) {
      const auto idx = table.schema.index_of(col);
      if (!idx) throw Error(ErrorCode::UnknownColumn, "no column '" + col + "' in " + seg.origin);
      projection.push_back(*idx);
      seg.columns.push_back(table.schema.columns[*idx]);
    }
  }

  std::optional<CompiledPredicate> filter;
  if (grant.row_predicate) filter.emplace(*grant.row_predicate, table.schema.columns);

  for (const auto& row : table.rows) {
    if (filter && !(*filter)(row)) continue;
    Row out;
    out.reserve(projection.size());
    for (std::size_t idx : projection) out.push_back(row[idx]);
    seg.rows.push_back(std::move(out));
  }
  return seg;
}

std::size_t TabularStore::row_count(std::string_view name) const {
  const auto it = tables_.find(name);
  if (it == tables_.end()) throw Error(ErrorCode::UnknownSource, "no table '" + std::string(name) + "'");
  return it->second.rows.size();
}

}  // namespace vaultgate::store
