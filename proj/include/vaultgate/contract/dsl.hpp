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

#include "vaultgate/contract/contract.hpp"

namespace vaultgate::contract {

// Parses one contract document into a Draft contract with Standard origin.
// Throws ParseError with line/column and the expected token on any grammar
// violation. Catalog checks are left to validate_contract.
//
//   contract "id" {
//     principal "svc-reporting"
//     purpose "quarterly report"
//     expires_in 1h                      # s, m or h
//     grant {
//       source warehouse.orders
//       columns [order_id, amount]       # or: columns *
//       where amount > 80 and created_at >= 2025-01-01
//       row_limit 100
//     }
//   }
DataContract parse_contract(std::string_view text);

// Renders the DSL form; parse_contract(print_contract(c)) reproduces every
// field the grammar carries. ttl is always printed in seconds.
std::string print_contract(const DataContract& c);

}  // namespace vaultgate::contract
