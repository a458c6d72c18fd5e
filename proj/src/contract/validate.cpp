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

#include "vaultgate/contract/validate.hpp"

#include <set>

#include "vaultgate/contract/lexer.hpp"

namespace vaultgate::contract {

std::string_view to_string(ProblemCode code) noexcept {
  switch (code) {
    case ProblemCode::UnknownSource:
      return "UnknownSource";
    case ProblemCode::UnknownColumn:
      return "UnknownColumn";
    case ProblemCode::TypeMismatch:
      return "TypeMismatch";
    case ProblemCode::EmptyGrant:
      return "EmptyGrant";
    case ProblemCode::DuplicateColumn:
      return "DuplicateColumn";
    case ProblemCode::NonPositiveTtl:
      return "NonPositiveTtl";
  }
  return "UnknownSource";
}

bool ValidationReport::has(ProblemCode code) const noexcept {
  for (const auto& p : problems) {
    if (p.code == code) return true;
  }
  return false;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& p : problems) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(p.code)) + ": " + p.message;
  }
  return out;
}

ValidationReport validate_contract(const DataContract& c, const SchemaCatalog& catalog) {
  ValidationReport report;
  auto add = [&](ProblemCode code, std::string message) {
    report.problems.push_back({code, std::move(message)});
  };

  if (c.ttl <= 0) add(ProblemCode::NonPositiveTtl, "ttl must be positive, got " + std::to_string(c.ttl));
  if (c.grants.empty()) add(ProblemCode::EmptyGrant, "contract has no grants");

  for (std::size_t gi = 0; gi < c.grants.size(); ++gi) {
    const Grant& g = c.grants[gi];
    const std::string where = "grant " + std::to_string(gi) + " (" + g.source + ")";
    const TableSchema* schema = catalog.find(g.source);
    if (schema == nullptr) {
      add(ProblemCode::UnknownSource, where + ": no such table");
      continue;
    }
    if (const auto* cols = std::get_if<std::vector<std::string>>(&g.columns)) {
      if (cols->empty()) add(ProblemCode::EmptyGrant, where + ": empty column list");
      std::set<std::string, std::less<>> seen;
      for (const auto& col : *cols) {
        if (!seen.insert(col).second) add(ProblemCode::DuplicateColumn, where + ": column '" + col + "' repeated");
        if (schema->find(col) == nullptr) add(ProblemCode::UnknownColumn, where + ": no column '" + col + "'");
      }
    }
    if (g.row_predicate) {
      if (g.row_predicate->conjuncts.empty()) add(ProblemCode::EmptyGrant, where + ": empty predicate");
      for (const auto& cmp : g.row_predicate->conjuncts) {
        const ColumnDef* def = schema->find(cmp.column);
        if (def == nullptr) {
          add(ProblemCode::UnknownColumn, where + ": predicate names unknown column '" + cmp.column + "'");
        } else if (!literal_fits(cmp.literal, def->type)) {
          add(ProblemCode::TypeMismatch, where + ": " + cmp.column + " is " +
                                             std::string(to_string(def->type)) + " but literal " +
                                             lex::print_literal(cmp.literal) + " is " +
                                             std::string(to_string(type_of(cmp.literal))));
        }
      }
    }
  }
  return report;
}

}  // namespace vaultgate::contract
