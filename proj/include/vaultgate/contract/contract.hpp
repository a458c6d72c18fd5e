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
#include <variant>
#include <vector>

#include "vaultgate/core/predicate.hpp"
#include "vaultgate/core/value.hpp"

namespace vaultgate::contract {

enum class Status { Draft, Active, Expired, Revoked };
enum class Origin { Standard, BreakGlass };

std::string_view to_string(Status status) noexcept;
std::string_view to_string(Origin origin) noexcept;
std::optional<Status> parse_status(std::string_view text) noexcept;
std::optional<Origin> parse_origin(std::string_view text) noexcept;

struct AllColumns {
  friend bool operator==(const AllColumns&, const AllColumns&) = default;
};

using ColumnSelection = std::variant<AllColumns, std::vector<std::string>>;

// One data segment: a source table narrowed by projection and row filter.
struct Grant {
  std::string source;  // namespace.table
  ColumnSelection columns = AllColumns{};
  std::optional<Predicate> row_predicate;
  std::optional<std::int64_t> row_limit;

  bool all_columns() const noexcept { return std::holds_alternative<AllColumns>(columns); }
  // The unqualified table part of `source`, i.e. the name queries use.
  std::string table_name() const;

  friend bool operator==(const Grant&, const Grant&) = default;
};

struct DataContract {
  std::string contract_id;
  std::string principal;
  std::string purpose;  // recorded verbatim, never interpreted
  std::vector<Grant> grants;
  std::int64_t ttl = 0;  // seconds
  Status status = Status::Draft;
  std::optional<Timestamp> activated_at;
  Origin origin = Origin::Standard;

  friend bool operator==(const DataContract&, const DataContract&) = default;
};

// Lifecycle transitions. Each returns the successor value and throws
// Error{StateError} when the current status does not allow the move.
DataContract activate(const DataContract& c, Timestamp now);
DataContract revoke(const DataContract& c);
// Active and no longer live -> Expired.
DataContract expire(const DataContract& c, Timestamp now);

// Live on the half-open interval [activated_at, activated_at + ttl).
bool is_live(const DataContract& c, Timestamp now) noexcept;

bool is_terminal(Status status) noexcept;

// Non-empty, at most 128 characters from [A-Za-z0-9_.-], not starting with
// '.'. Contract ids double as file names.
bool valid_contract_id(std::string_view id) noexcept;

}  // namespace vaultgate::contract
