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

#include "vaultgate/contract/contract.hpp"
#include "vaultgate/core/canonical_json.hpp"

namespace vaultgate::contract {

// Literal as {"type": "INTEGER"|"DECIMAL"|"STRING"|"DATE", "value": ...}.
// DECIMAL values travel as their shortest fixed-notation string so the
// canonical bytes never depend on float formatting.
Json literal_to_json(const Value& literal);
Value literal_from_json(const Json& j);

Json predicate_to_json(const Predicate& p);
Predicate predicate_from_json(const Json& j);

Json to_json(const DataContract& c);
// Throws Error{BadRequest} on any structural mismatch.
DataContract from_json(const Json& j);

// Canonical JSON bytes of to_json(c); equal contracts encode identically.
std::string canonical_encode(const DataContract& c);

}  // namespace vaultgate::contract
