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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/core/canonical_json.hpp"
#include "vaultgate/core/value.hpp"

namespace vaultgate::audit {

enum class Kind {
  ContractSubmitted,
  ContractActivated,
  ContractRevoked,
  ContractExpired,
  EnclaveTransition,
  SessionOpened,
  SessionClosed,
  QueryExecuted,
  QueryDenied,
  AlertRaised,
  BreakGlassRequested,
  BreakGlassApproved,
  BreakGlassActivated,
  BreakGlassRevoked,
};

std::string_view to_string(Kind kind) noexcept;
std::optional<Kind> parse_kind(std::string_view text) noexcept;

struct Event {
  std::uint64_t seq = 0;
  Timestamp timestamp = 0;
  std::string actor;
  Kind kind = Kind::ContractSubmitted;
  Json payload = Json::object();
  std::string prev_hash;
  std::string hash;
};

// 64 '0' characters; prev_hash of event 0.
const std::string& genesis_hash();

// SHA-256 over the canonical JSON of {actor, kind, payload, prev_hash, seq,
// timestamp}.
std::string compute_hash(const Event& event);

Json to_json(const Event& event);
// Throws Error{BadRequest} on structural mismatch.
Event event_from_json(const Json& j);
// Canonical JSON of to_json(event) plus '\n': one line of the ledger file.
std::string encode_line(const Event& event);

// Last sealed position, kept beside the ledger file so that truncating the
// tail is detectable too.
struct Head {
  std::uint64_t count = 0;
  std::string hash;
};

struct VerifyResult {
  std::optional<std::uint64_t> first_bad_seq;  // empty means Ok
  std::string reason;

  bool ok() const noexcept { return !first_bad_seq.has_value(); }
};

// Recomputes every hash and link; reports the lowest failing position.
VerifyResult verify_chain(std::span<const Event> events);
// Same over the raw JSON-Lines bytes. Each line must be the exact canonical
// encoding of its event and LF-terminated. With `head`, a log shorter than
// head.count fails at the first missing seq.
VerifyResult verify_text(std::string_view text, const std::optional<Head>& head = std::nullopt);
VerifyResult verify_file(const std::filesystem::path& path, const std::optional<Head>& head = std::nullopt);

std::optional<Head> read_head(const std::filesystem::path& ledger_path);
std::filesystem::path head_path(const std::filesystem::path& ledger_path);

struct Filter {
  std::optional<Kind> kind;
  std::optional<std::string> actor;
  std::optional<std::string> contract_id;  // matches payload.contract_id
  std::optional<Timestamp> since;          // inclusive
  std::optional<Timestamp> until;          // inclusive
};

// Append-only, hash-chained event log; a single global chain. With a path the
// log is persisted as JSON Lines and every append reaches the file before it
// returns.
class Ledger {
 public:
  Ledger() = default;
  // Loads and verifies an existing file (Error{StorageFailure} if it does not
  // verify), or starts a new one.
  explicit Ledger(std::filesystem::path path, bool fsync = true);
  ~Ledger();

  Ledger(const Ledger&) = delete;
  Ledger& operator=(const Ledger&) = delete;

  // Throws Error{StorageFailure} if the event could not be persisted; the
  // in-memory chain is then unchanged.
  Event append(Timestamp timestamp, std::string actor, Kind kind, Json payload);

  std::vector<Event> query(const Filter& filter) const;
  const std::vector<Event>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  std::string head_hash() const;
  const std::optional<std::filesystem::path>& path() const noexcept { return path_; }

  // Fault injection: the next append fails with StorageFailure.
  void fail_next_append() noexcept { fail_next_ = true; }

 private:
  void write_durably(const std::string& line, const Head& head);

  std::vector<Event> events_;
  std::optional<std::filesystem::path> path_;
  int fd_ = -1;
  bool fsync_ = true;
  bool fail_next_ = false;
};

}  // namespace vaultgate::audit
