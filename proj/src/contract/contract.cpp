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

#include "vaultgate/contract/contract.hpp"

#include <algorithm>
#include <cctype>

#include "vaultgate/core/error.hpp"

namespace vaultgate::contract {

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::Draft:
      return "Draft";
    case Status::Active:
      return "Active";
    case Status::Expired:
      return "Expired";
    case Status::Revoked:
      return "Revoked";
  }
  return "Draft";
}

std::string_view to_string(Origin origin) noexcept {
  return origin == Origin::BreakGlass ? "BreakGlass" : "Standard";
}

std::optional<Status> parse_status(std::string_view text) noexcept {
  if (text == "Draft") return Status::Draft;
  if (text == "Active") return Status::Active;
  if (text == "Expired") return Status::Expired;
  if (text == "Revoked") return Status::Revoked;
  return std::nullopt;
}

std::optional<Origin> parse_origin(std::string_view text) noexcept {
  if (text == "Standard") return Origin::Standard;
  if (text == "BreakGlass") return Origin::BreakGlass;
  return std::nullopt;
}

std::string Grant::table_name() const {
  const auto dot = source.find('.');
  return dot == std::string::npos ? source : source.substr(dot + 1);
}

namespace {

[[noreturn]] void bad_transition(const DataContract& c, std::string_view to) {
  throw Error(ErrorCode::StateError, "contract '" + c.contract_id + "' cannot move from " +
                                         std::string(to_string(c.status)) + " to " +
                                         std::string(to));
}

}  // namespace

DataContract activate(const DataContract& c, Timestamp now) {
  if (c.status != Status::Draft) bad_transition(c, "Active");
  DataContract next = c;
  next.status = Status::Active;
  next.activated_at = now;
  return next;
}

DataContract revoke(const DataContract& c) {
  if (c.status != Status::Active) bad_transition(c, "Revoked");
  DataContract next = c;
  next.status = Status::Revoked;
  return next;
}

DataContract expire(const DataContract& c, Timestamp now) {
  if (c.status != Status::Active || is_live(c, now)) bad_transition(c, "Expired");
  DataContract next = c;
  next.status = Status::Expired;
  return next;
}

bool is_live(const DataContract& c, Timestamp now) noexcept {
  if (c.status != Status::Active || !c.activated_at) return false;
  const Timestamp start = *c.activated_at;
  // now - start < ttl, written to avoid overflow of start + ttl.
  return now >= start && now - start < c.ttl;
}

bool is_terminal(Status status) noexcept {
  return status == Status::Expired || status == Status::Revoked;
}

bool valid_contract_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    const auto u = static_cast<unsigned char>(ch);
    return std::isalnum(u) || ch == '_' || ch == '.' || ch == '-';
  });
}

}  // namespace vaultgate::contract
