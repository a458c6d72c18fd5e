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
#include <string>
#include <vector>

#include "vaultgate/breakglass/break_glass.hpp"
#include "vaultgate/core/canonical_json.hpp"
#include "vaultgate/monitor/monitor.hpp"

namespace vaultgate::broker {

enum class ClockMode { Wall, Logical };

struct TableSource {
  std::string name;  // namespace.table
  std::filesystem::path csv;
};

struct BrokerConfig {
  // Without a data directory nothing is persisted.
  std::optional<std::filesystem::path> data_dir;
  std::vector<TableSource> tables;
  monitor::RulesConfig monitor;
  breakglass::Policy break_glass;
  std::vector<std::string> break_glass_accounts;
  ClockMode clock = ClockMode::Logical;
  Timestamp clock_start = 0;
  bool fsync = true;
  std::string endpoint;  // unix socket path for the daemon

  // Relative paths are resolved against `base`. Throws Error{BadConfig}.
  static BrokerConfig from_json(const Json& j, const std::filesystem::path& base = {});
  static BrokerConfig load(const std::filesystem::path& path);
  Json to_json() const;

  // Throws Error{BadConfig}.
  void check() const;
};

}  // namespace vaultgate::broker
