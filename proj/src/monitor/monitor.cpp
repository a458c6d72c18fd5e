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

#include "vaultgate/monitor/monitor.hpp"

#include "vaultgate/core/error.hpp"

namespace vaultgate::monitor {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Select:
      return "Select";
    case EventKind::SelectStar:
      return "SelectStar";
    case EventKind::ShowTables:
      return "ShowTables";
    case EventKind::CopyInto:
      return "CopyInto";
    case EventKind::Invalid:
      return "Invalid";
    case EventKind::BreakGlassActivation:
      return "BreakGlassActivation";
  }
  return "Invalid";
}

std::string_view to_string(Rule rule) noexcept {
  switch (rule) {
    case Rule::ExfiltrationAttempt:
      return "ExfiltrationAttempt";
    case Rule::EnumerationPattern:
      return "EnumerationPattern";
    case Rule::VolumeDeviation:
      return "VolumeDeviation";
    case Rule::ProbingDenials:
      return "ProbingDenials";
    case Rule::BreakGlassActivated:
      return "BreakGlassActivated";
  }
  return "ExfiltrationAttempt";
}

std::string_view to_string(Severity severity) noexcept {
  return severity == Severity::Critical ? "Critical" : "High";
}

std::optional<Rule> parse_rule(std::string_view text) noexcept {
  for (auto r : {Rule::ExfiltrationAttempt, Rule::EnumerationPattern, Rule::VolumeDeviation,
                 Rule::ProbingDenials, Rule::BreakGlassActivated}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

Severity severity_of(Rule rule) noexcept {
  return rule == Rule::ExfiltrationAttempt || rule == Rule::BreakGlassActivated ? Severity::Critical
                                                                                : Severity::High;
}

Monitor::Monitor(RulesConfig config) { configure(config); }

void Monitor::configure(const RulesConfig& config) {
  if (config.volume_threshold == 0 || config.probing_threshold == 0 || config.window <= 0) {
    throw Error(ErrorCode::BadConfig, "monitor thresholds and window must be positive");
  }
  config_ = config;
}

Alert Monitor::make_alert(Rule rule, const MonitorEvent& ev, std::vector<std::size_t> evidence,
                          std::string detail) {
  Alert a;
  a.alert_id = "alert-" + std::to_string(next_alert_++);
  a.rule = rule;
  a.severity = severity_of(rule);
  a.session_id = ev.session_id;
  a.contract_id = ev.contract_id;
  a.enclave_id = ev.enclave_id;
  a.evidence = std::move(evidence);
  a.at = ev.at;
  a.detail = std::move(detail);
  alerts_.push_back(a);
  return a;
}

std::vector<Alert> Monitor::record_event(MonitorEvent event) {
  event.seq = events_.size();
  events_.push_back(event);
  const MonitorEvent& ev = events_.back();
  SessionState& st = sessions_[ev.session_id];
  std::vector<Alert> raised;

  if (ev.kind == EventKind::CopyInto) {
    raised.push_back(make_alert(Rule::ExfiltrationAttempt, ev, {ev.seq}, "COPY INTO issued"));
  }

  if (ev.kind == EventKind::ShowTables && !st.show_tables_seq) st.show_tables_seq = ev.seq;
  if (ev.kind == EventKind::SelectStar && st.show_tables_seq && !st.enumeration_fired) {
    st.enumeration_fired = true;
    raised.push_back(make_alert(Rule::EnumerationPattern, ev, {*st.show_tables_seq, ev.seq},
                                "SHOW TABLES followed by SELECT *"));
  }

  if (ev.allowed && ev.rows_returned > 0) {
    st.rows += ev.rows_returned;
    st.row_events.push_back(ev.seq);
    if (!st.volume_fired && st.rows > config_.volume_threshold) {
      st.volume_fired = true;
      raised.push_back(make_alert(Rule::VolumeDeviation, ev, st.row_events,
                                  std::to_string(st.rows) + " rows exceed threshold " +
                                      std::to_string(config_.volume_threshold)));
    }
  }

  if (!ev.allowed) {
    st.denials.emplace_back(ev.at, ev.seq);
    while (!st.denials.empty() && st.denials.front().first <= ev.at - config_.window) {
      st.denials.pop_front();
    }
    if (st.denials.size() >= config_.probing_threshold) {
      std::vector<std::size_t> evidence;
      for (const auto& [_, seq] : st.denials) evidence.push_back(seq);
      st.denials.clear();
      raised.push_back(make_alert(Rule::ProbingDenials, ev, std::move(evidence),
                                  std::to_string(config_.probing_threshold) + " denials within " +
                                      std::to_string(config_.window) + "s"));
    }
  }
  return raised;
}

Alert Monitor::raise_break_glass(const std::string& contract_id, const std::string& enclave_id,
                                 const std::string& account, Timestamp at) {
  MonitorEvent ev;
  ev.seq = events_.size();
  ev.enclave_id = enclave_id;
  ev.contract_id = contract_id;
  ev.kind = EventKind::BreakGlassActivation;
  ev.at = at;
  events_.push_back(ev);
  return make_alert(Rule::BreakGlassActivated, ev, {ev.seq}, "break-glass activation for " + account);
}

std::vector<Alert> Monitor::alerts(const AlertFilter& filter) const {
  std::vector<Alert> out;
  for (const auto& a : alerts_) {
    if (filter.contract_id && a.contract_id != *filter.contract_id) continue;
    if (filter.enclave_id && a.enclave_id != *filter.enclave_id) continue;
    if (filter.session_id && a.session_id != *filter.session_id) continue;
    if (filter.rule && a.rule != *filter.rule) continue;
    if (filter.since && a.at < *filter.since) continue;
    if (filter.until && a.at > *filter.until) continue;
    out.push_back(a);
  }
  return out;
}

}  // namespace vaultgate::monitor
