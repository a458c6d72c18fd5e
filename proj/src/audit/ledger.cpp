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

#include "vaultgate/audit/ledger.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "vaultgate/core/error.hpp"
#include "vaultgate/core/sha256.hpp"

namespace vaultgate::audit {

namespace {

constexpr std::string_view kKindNames[] = {
    "ContractSubmitted", "ContractActivated", "ContractRevoked",    "ContractExpired",
    "EnclaveTransition", "SessionOpened",     "SessionClosed",      "QueryExecuted",
    "QueryDenied",       "AlertRaised",       "BreakGlassRequested", "BreakGlassApproved",
    "BreakGlassActivated", "BreakGlassRevoked",
};

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::BadRequest, "malformed audit event: " + what);
}

bool is_hex64(const std::string& s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace

std::string_view to_string(Kind kind) noexcept { return kKindNames[static_cast<int>(kind)]; }

std::optional<Kind> parse_kind(std::string_view text) noexcept {
  for (std::size_t i = 0; i < std::size(kKindNames); ++i) {
    if (kKindNames[i] == text) return static_cast<Kind>(i);
  }
  return std::nullopt;
}

const std::string& genesis_hash() {
  static const std::string kGenesis(64, '0');
  return kGenesis;
}

std::string compute_hash(const Event& event) {
  const Json preimage = {
      {"seq", event.seq},
      {"timestamp", event.timestamp},
      {"actor", event.actor},
      {"kind", std::string(to_string(event.kind))},
      {"payload", event.payload},
      {"prev_hash", event.prev_hash},
  };
  return sha256_hex(canonical_dump(preimage));
}

Json to_json(const Event& event) {
  return {
      {"seq", event.seq},
      {"timestamp", event.timestamp},
      {"actor", event.actor},
      {"kind", std::string(to_string(event.kind))},
      {"payload", event.payload},
      {"prev_hash", event.prev_hash},
      {"hash", event.hash},
  };
}

Event event_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 7) malformed("expected an object with 7 members");
  Event e;
  try {
    const Json& seq = j.at("seq");
    if (!seq.is_number_unsigned()) malformed("seq");
    e.seq = seq.get<std::uint64_t>();
    const Json& ts = j.at("timestamp");
    if (!ts.is_number_integer()) malformed("timestamp");
    e.timestamp = ts.get<Timestamp>();
    e.actor = j.at("actor").get<std::string>();
    const auto kind = parse_kind(j.at("kind").get<std::string>());
    if (!kind) malformed("kind");
    e.kind = *kind;
    e.payload = j.at("payload");
    if (!e.payload.is_object()) malformed("payload");
    e.prev_hash = j.at("prev_hash").get<std::string>();
    e.hash = j.at("hash").get<std::string>();
  } catch (const Json::exception& ex) {
    malformed(ex.what());
  }
  if (!is_hex64(e.prev_hash) || !is_hex64(e.hash)) malformed("hash fields");
  return e;
}

std::string encode_line(const Event& event) { return canonical_dump(to_json(event)) + "\n"; }

VerifyResult verify_chain(std::span<const Event> events) {
  std::string expected_prev = genesis_hash();
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    if (e.seq != i) return {i, "seq " + std::to_string(e.seq) + " at position " + std::to_string(i)};
    if (e.prev_hash != expected_prev) return {i, "prev_hash does not link to the previous event"};
    if (compute_hash(e) != e.hash) return {i, "stored hash does not match contents"};
    expected_prev = e.hash;
  }
  return {};
}

VerifyResult verify_text(std::string_view text, const std::optional<Head>& head) {
  std::vector<std::string> hashes;
  std::size_t pos = 0;
  std::string expected_prev = genesis_hash();
  while (pos < text.size()) {
    const std::uint64_t index = hashes.size();
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) return {index, "unterminated final line"};
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;

    Event e;
    try {
      const Json j = Json::parse(line);
      if (canonical_dump(j) != line) return {index, "line is not in canonical form"};
      e = event_from_json(j);
    } catch (const Json::exception&) {
      return {index, "line is not valid JSON"};
    } catch (const Error& err) {
      return {index, err.what()};
    }
    if (e.seq != index) return {index, "seq " + std::to_string(e.seq) + " at position " + std::to_string(index)};
    if (e.prev_hash != expected_prev) return {index, "prev_hash does not link to the previous event"};
    if (compute_hash(e) != e.hash) return {index, "stored hash does not match contents"};
    expected_prev = e.hash;
    hashes.push_back(std::move(e.hash));
  }
  if (head && head->count > 0) {
    if (hashes.size() < head->count) return {hashes.size(), "log ends before the recorded head"};
    if (hashes[head->count - 1] != head->hash) return {head->count - 1, "event hash differs from the recorded head"};
  }
  return {};
}

VerifyResult verify_file(const std::filesystem::path& path, const std::optional<Head>& head) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    if (head && head->count > 0) return {0, "ledger file missing"};
    return {};
  }
  return verify_text(read_all(path), head);
}

std::filesystem::path head_path(const std::filesystem::path& ledger_path) {
  auto p = ledger_path;
  p += ".head";
  return p;
}

std::optional<Head> read_head(const std::filesystem::path& ledger_path) {
  const auto text = read_all(head_path(ledger_path));
  if (text.empty()) return std::nullopt;
  try {
    const Json j = Json::parse(text);
    return Head{j.at("count").get<std::uint64_t>(), j.at("hash").get<std::string>()};
  } catch (const Json::exception&) {
    throw Error(ErrorCode::StorageFailure, "unreadable ledger head file");
  }
}

Ledger::Ledger(std::filesystem::path path, bool fsync) : path_(std::move(path)), fsync_(fsync) {
  const auto head = read_head(*path_);
  const std::string text = read_all(*path_);
  const VerifyResult vr = verify_text(text, head);
  if (!vr.ok()) {
    throw Error(ErrorCode::StorageFailure, "ledger " + path_->string() + " fails verification at seq " +
                                               std::to_string(*vr.first_bad_seq) + ": " + vr.reason);
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    events_.push_back(event_from_json(Json::parse(text.substr(pos, nl - pos))));
    pos = nl + 1;
  }
  fd_ = ::open(path_->c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw Error(ErrorCode::StorageFailure, "cannot open ledger " + path_->string() + ": " + std::strerror(errno));
  }
}

Ledger::~Ledger() {
  if (fd_ >= 0) ::close(fd_);
}

std::string Ledger::head_hash() const { return events_.empty() ? genesis_hash() : events_.back().hash; }

void Ledger::write_durably(const std::string& line, const Head& head) {
  if (!write_all(fd_, line) || (fsync_ && ::fsync(fd_) != 0)) {
    throw Error(ErrorCode::StorageFailure, "ledger write failed: " + std::string(std::strerror(errno)));
  }
  const auto hp = head_path(*path_);
  auto tmp = hp;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << canonical_dump(Json{{"count", head.count}, {"hash", head.hash}}) << "\n";
    if (!out) throw Error(ErrorCode::StorageFailure, "ledger head write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, hp, ec);
  if (ec) throw Error(ErrorCode::StorageFailure, "ledger head rename failed: " + ec.message());
}

Event Ledger::append(Timestamp timestamp, std::string actor, Kind kind, Json payload) {
  if (!payload.is_object()) throw Error(ErrorCode::Internal, "audit payload must be an object");
  if (fail_next_) {
    fail_next_ = false;
    throw Error(ErrorCode::StorageFailure, "injected ledger failure");
  }
  Event e;
  e.seq = events_.size();
  e.timestamp = timestamp;
  e.actor = std::move(actor);
  e.kind = kind;
  e.payload = std::move(payload);
  e.prev_hash = head_hash();
  e.hash = compute_hash(e);
  if (path_) write_durably(encode_line(e), Head{e.seq + 1, e.hash});
  events_.push_back(e);
  return e;
}

std::vector<Event> Ledger::query(const Filter& filter) const {
  std::vector<Event> out;
  for (const auto& e : events_) {
    if (filter.kind && e.kind != *filter.kind) continue;
    if (filter.actor && e.actor != *filter.actor) continue;
    if (filter.contract_id) {
      const auto it = e.payload.find("contract_id");
      if (it == e.payload.end() || !it->is_string() || it->get<std::string>() != *filter.contract_id) continue;
    }
    if (filter.since && e.timestamp < *filter.since) continue;
    if (filter.until && e.timestamp > *filter.until) continue;
    out.push_back(e);
  }
  return out;
}

}  // namespace vaultgate::audit
