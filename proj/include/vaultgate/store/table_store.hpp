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

#include <atomic>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/contract/contract.hpp"
#include "vaultgate/core/catalog.hpp"
#include "vaultgate/core/predicate.hpp"
#include "vaultgate/core/value.hpp"

namespace vaultgate::store {

using Row = std::vector<Value>;

struct Table {
  TableSchema schema;
  std::vector<Row> rows;
};

// A contract-scoped copy of part of one table. Holds no reference back to the
// store it came from.
struct Segment {
  std::string origin;
  std::vector<ColumnDef> columns;
  std::vector<Row> rows;
  Timestamp extracted_at = 0;

  std::vector<std::string> column_names() const;

  friend bool operator==(const Segment&, const Segment&) = default;
};

// Predicate bound to column positions of a particular layout.
class CompiledPredicate {
 public:
  // Throws Error{UnknownColumn} or Error{TypeMismatch}.
  CompiledPredicate(const Predicate& predicate, std::span<const ColumnDef> columns);

  bool operator()(std::span<const Value> row) const;

 private:
  struct Term {
    std::size_t index;
    CompareOp op;
    Value literal;
  };
  std::vector<Term> terms_;
};

// True iff every conjunct holds for `row` laid out as `columns`.
bool eval_predicate(std::span<const Value> row, std::span<const ColumnDef> columns,
                    const Predicate& predicate);

// Throws Error{TypeMismatch} unless `row` has the schema's arity and every cell
// the column's type (REAL cells finite).
void check_row(const Row& row, const TableSchema& schema, std::string_view table);

class TabularStore {
 public:
  TabularStore() = default;
  TabularStore(const TabularStore&) = delete;
  TabularStore& operator=(const TabularStore&) = delete;

  // Throws Error{DuplicateTable} or Error{TypeMismatch}.
  void register_table(const std::string& name, TableSchema schema, std::vector<Row> rows);
  // Source-side mutation; never visible through already extracted segments.
  void append_rows(std::string_view name, std::vector<Row> rows);

  // Throws Error{UnknownSource}. Columns resolve in grant order (AllColumns ->
  // schema order); rows keep source order.
  Segment extract_segment(std::string_view name, const contract::Grant& grant, Timestamp now) const;

  const SchemaCatalog& catalog() const noexcept { return catalog_; }
  std::size_t row_count(std::string_view name) const;

  // Number of data reads served (extractions). Instrumentation for the
  // zero-upstream-reads property.
  std::uint64_t access_count() const noexcept { return accesses_.load(); }

 private:
  SchemaCatalog catalog_;
  std::map<std::string, Table, std::less<>> tables_;
  mutable std::atomic<std::uint64_t> accesses_{0};
};

}  // namespace vaultgate::store
