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

#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/contract/contract.hpp"
#include "vaultgate/core/catalog.hpp"

namespace vaultgate::contract {

enum class ProblemCode {
  UnknownSource,
  UnknownColumn,
  TypeMismatch,
  EmptyGrant,
  DuplicateColumn,
  NonPositiveTtl,
};

std::string_view to_string(ProblemCode code) noexcept;

struct Problem {
  ProblemCode code;
  std::string message;
};

struct ValidationReport {
  std::vector<Problem> problems;

  bool ok() const noexcept { return problems.empty(); }
  bool has(ProblemCode code) const noexcept;
  // "Code: message; Code: message"
  std::string summary() const;
};

// Reports every problem found; never throws.
ValidationReport validate_contract(const DataContract& c, const SchemaCatalog& catalog);

}  // namespace vaultgate::contract
