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
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/core/value.hpp"

namespace vaultgate::monitor {

enum class EventKind { Select, SelectStar, ShowTables, CopyInto, Invalid, BreakGlassActivation };
enum class Rule { ExfiltrationAttempt, EnumerationPattern, VolumeDeviation, ProbingDenials, BreakGlassActivated };
enum class Severity { High, Critical };

std::string_view to_string(EventKind kind) noexcept;
std::string_view to_string(Rule rule) noexcept;
std::string_view to_string(Severity severity) noexcept;
std::optional<Rule> parse_rule(std::string_view text) noexcept;

// Exfiltration and break-glass activation are Critical; everything else High.
Severity severity_of(Rule rule) noexcept;

struct MonitorEvent {
  std::size_t seq = 0;  // assigned by record_event; index into events()
  std::string session_id;
  std::string enclave_id;
  std::string contract_id;
  EventKind kind = EventKind::Select;
  bool allowed = true;
  std::size_t rows_returned = 0;
  Timestamp at = 0;
};

struct Alert {
  std::string alert_id;
  Rule rule = Rule::ExfiltrationAttempt;
  Severity severity = Severity::High;
  std::string session_id;
  std::string contract_id;
  std::string enclave_id;
  std::vector<std::size_t> evidence;  // MonitorEvent::seq values
  Timestamp at = 0;
  std::string detail;
};

struct RulesConfig {
  std::uint64_t volume_threshold = 10000;  // cumulative rows per session
  std::uint64_t probing_threshold = 5;     // denials per window
  std::int64_t window = 300;               // seconds
};

struct AlertFilter {
  std::optional<std::string> contract_id;
  std::optional<std::string> enclave_id;
  std::optional<std::string> session_id;
  std::optional<Rule> rule;
  std::optional<Timestamp> since;  // inclusive
  std::optional<Timestamp> until;  // inclusive
};

// Incremental rule engine over query events. Rule state is kept per session:
//
//  - ExfiltrationAttempt: any COPY INTO, allowed or not.
//  - EnumerationPattern: a SHOW TABLES followed (not necessarily directly) by
//    a SELECT *; at most once per session.
//  - VolumeDeviation: cumulative rows returned exceed volume_threshold; once
//    per session.
//  - ProbingDenials: probing_threshold denials within `window` seconds. The
//    window restarts after each alert.
class Monitor {
 public:
  explicit Monitor(RulesConfig config = {});

  // Throws Error{BadConfig} on any non-positive value.
  void configure(const RulesConfig& config);
  const RulesConfig& config() const noexcept { return config_; }

  // Appends the event and returns the alerts it raised, in rule order.
  std::vector<Alert> record_event(MonitorEvent event);

  // Records an activation event and raises the Critical alert for it.
  Alert raise_break_glass(const std::string& contract_id, const std::string& enclave_id,
                          const std::string& account, Timestamp at);

  std::vector<Alert> alerts(const AlertFilter& filter = {}) const;
  const std::vector<MonitorEvent>& events() const noexcept { return events_; }

  // Alert ids are "alert-<n>"; lets a restarted broker avoid reusing ids.
  void set_next_alert_number(std::uint64_t n) noexcept { next_alert_ = n; }

 private:
  struct SessionState {
    std::optional<std::size_t> show_tables_seq;
    bool enumeration_fired = false;
    std::uint64_t rows = 0;
    std::vector<std::size_t> row_events;
    bool volume_fired = false;
    std::deque<std::pair<Timestamp, std::size_t>> denials;
  };

  Alert make_alert(Rule rule, const MonitorEvent& ev, std::vector<std::size_t> evidence, std::string detail);

  RulesConfig config_;
  std::vector<MonitorEvent> events_;
  std::vector<Alert> alerts_;
  std::map<std::string, SessionState, std::less<>> sessions_;
  std::uint64_t next_alert_ = 1;
};

}  // namespace vaultgate::monitor
