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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/contract/contract.hpp"
#include "vaultgate/store/table_store.hpp"

namespace vaultgate::enclave {

enum class State { Defined, Provisioning, Sealed, Serving, Expired, Revoked, Destroyed };
enum class Cause { Operator, Expiry, Revocation, BreakGlassAuto };

std::string_view to_string(State state) noexcept;
std::string_view to_string(Cause cause) noexcept;

struct TransitionRecord {
  std::string enclave_id;
  std::optional<State> from;  // empty for the creation record
  State to = State::Defined;
  Timestamp at = 0;
  Cause cause = Cause::Operator;
};

// An isolated holder of one contract's data segments.
//
// Two doors guard it: the upstream door (open only while Provisioning, when
// segments are copied out of the store) and the gateway door (open only while
// Serving). They are never open at the same time. After seal() the enclave
// keeps no handle to the store; every query is answered from the copied
// segments.
//
//   Defined -> Provisioning -> Sealed -> Serving
//      \___________\______________\________\__-> Expired | Revoked -> Destroyed
//
// Every transition is appended to history(). Illegal moves throw
// Error{StateError} and leave the enclave untouched.
class Enclave {
 public:
  // Throws Error{ContractNotLive} unless contract::is_live(c, now).
  static Enclave create(std::string enclave_id, const contract::DataContract& c, Timestamp now);

  // Defined -> Provisioning. Opens the upstream door and extracts one segment
  // per grant. An extraction failure closes the door, moves the enclave to
  // Revoked, and rethrows.
  void provision(const store::TabularStore& store, Timestamp now);
  // Provisioning -> Sealed; closes the upstream door.
  void seal(Timestamp now);
  // Sealed -> Serving; opens the gateway door. Throws Error{ManTrapViolation}
  // if the upstream door is somehow still open.
  void open_gate(Timestamp now);
  // Any live state -> Expired (cause Expiry or BreakGlassAuto) or Revoked
  // (Revocation, Operator). Closes both doors.
  void expire_or_revoke(Cause cause, Timestamp now);
  // Expired|Revoked -> Destroyed; erases segments.
  void destroy(Timestamp now);

  const std::string& id() const noexcept { return id_; }
  const std::string& contract_id() const noexcept { return contract_id_; }
  State state() const noexcept { return state_; }
  bool upstream_open() const noexcept { return upstream_open_; }
  bool gateway_open() const noexcept { return gateway_open_; }
  Timestamp created_at() const noexcept { return created_at_; }
  std::optional<Timestamp> sealed_at() const noexcept { return sealed_at_; }
  const std::vector<contract::Grant>& grants() const noexcept { return grants_; }
  const std::map<std::size_t, store::Segment>& segments() const noexcept { return segments_; }
  const std::vector<TransitionRecord>& history() const noexcept { return history_; }

  // Distinct unqualified table names, in grant order.
  std::vector<std::string> table_names() const;
  // First grant whose table part equals `table`; nullopt if none.
  std::optional<std::size_t> grant_for_table(std::string_view table) const;

  // SHA-256 over the canonical encoding of all segments.
  std::string segments_digest() const;

  bool is_live_state() const noexcept;

 private:
  Enclave() = default;

  void move_to(State to, Cause cause, Timestamp now);
  void check_invariants() const;
  [[noreturn]] void reject(std::string_view op) const;

  friend struct EnclaveTestPeer;

  std::string id_;
  std::string contract_id_;
  std::vector<contract::Grant> grants_;
  State state_ = State::Defined;
  bool upstream_open_ = false;
  bool gateway_open_ = false;
  std::map<std::size_t, store::Segment> segments_;
  Timestamp created_at_ = 0;
  std::optional<Timestamp> sealed_at_;
  std::vector<TransitionRecord> history_;
};

}  // namespace vaultgate::enclave
