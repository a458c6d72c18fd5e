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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "support/properties.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (budget_s > 0 && secs >= budget_s) {
    o.ok = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(budget_s)) + " s budget)";
  }
  if (!o.ok) ++failures;
  std::printf("%s criterion %d %s: %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

Outcome from(const vgtest::Report& r, const std::string& summary) {
  return {r.ok, r.ok ? summary : r.detail};
}

}  // namespace

int main() {
  using namespace vgtest;

  criterion(1, "man-trap safety", 30, [] {
    const auto r = check_mantrap(6, 1000, 50, 1);
    return from(r, std::to_string(r.cases) + " operations checked");
  });

  criterion(2, "oracle containment", 60, [] {
    const auto r = check_containment(500, 3, 2);
    std::string mix;
    for (const auto& [k, v] : r.tally) mix += (mix.empty() ? "" : ", ") + k + " " + std::to_string(v);
    Outcome o = from(r, std::to_string(r.cases) + " triples match the oracle (" + mix + ")");
    if (r.ok && r.cases < 500) o = {false, "only " + std::to_string(r.cases) + " triples"};
    return o;
  });

  criterion(3, "two-contract isolation", 0, [] {
    const auto r = check_isolation(300, 3);
    return from(r, std::to_string(r.cases) + " fuzzed queries, no foreign marker, cross-token BadToken");
  });

  criterion(4, "temporal soundness", 0, [] {
    const auto r = check_temporal();
    return from(r, "live at +59, expired at +60, no live grants");
  });

  criterion(5, "audit tamper evidence", 0, [] {
    const auto r = check_tamper(50, 100, 20, 20, 5);
    Outcome o = from(r, std::to_string(r.cases) + " tamperings located");
    if (o.ok && mediation_failures != 0) {
      o = {false, std::to_string(mediation_failures) + " runs broke total mediation"};
    } else if (o.ok) {
      o.detail += ", mediation held in " + std::to_string(mediation_checks) + " broker runs";
    }
    return o;
  });

  criterion(6, "break-glass", 5, [] {
    std::string first, second;
    const auto a = check_break_glass(&first);
    const auto b = check_break_glass(&second);
    if (!a.ok) return from(a, "");
    if (!b.ok) return from(b, "");
    if (first != second) return Outcome{false, "two runs produced different ledgers"};
    return Outcome{true, "quorum, rejections, activation and auto-revocation, deterministic"};
  });

  criterion(7, "incident replay", 0, [] {
    const auto r = check_incident_replay(fs::path(VG_FIXTURES) / "c1.contract");
    return from(r, "one High EnumerationPattern, one Critical ExfiltrationAttempt, COPY denied");
  });

  criterion(8, "parser round trips", 0, [] {
    const auto r = check_round_trips(1000, 1000, 1000, 8);
    return from(r, std::to_string(r.cases) + " inputs");
  });

  return failures == 0 ? 0 : 1;
}
