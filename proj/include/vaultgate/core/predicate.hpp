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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/core/value.hpp"

namespace vaultgate {

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(CompareOp op) noexcept;
std::optional<CompareOp> parse_compare_op(std::string_view text) noexcept;
bool holds(CompareOp op, std::weak_ordering order) noexcept;

struct Comparison {
  std::string column;
  CompareOp op = CompareOp::Eq;
  Value literal;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// Conjunction of comparisons. Never empty once parsed.
struct Predicate {
  std::vector<Comparison> conjuncts;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

}  // namespace vaultgate
