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


#include "vaultgate/broker/config.hpp"

#include <fstream>
#include <sstream>

#include "vaultgate/core/error.hpp"

namespace vaultgate::broker {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::BadConfig, what); }

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (p.is_absolute() || base.empty()) return p;
  return base / p;
}

template <typename T>
T positive(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) bad(std::string(key) + " must be a positive integer");
  return static_cast<T>(v.get<std::int64_t>());
}

}  // namespace

BrokerConfig BrokerConfig::from_json(const Json& j, const std::filesystem::path& base) {
  if (!j.is_object()) bad("config must be a JSON object");
  BrokerConfig c;
  try {
    if (j.contains("data_dir") && !j.at("data_dir").is_null()) {
      c.data_dir = resolve(j.at("data_dir").get<std::string>(), base);
    }
    if (j.contains("endpoint")) c.endpoint = resolve(j.at("endpoint").get<std::string>(), base).string();
    if (j.contains("clock")) {
      const auto mode = j.at("clock").get<std::string>();
      if (mode == "logical") {
        c.clock = ClockMode::Logical;
      } else if (mode == "wall") {
        c.clock = ClockMode::Wall;
      } else {
        bad("clock must be \"logical\" or \"wall\"");
      }
    }
    if (j.contains("clock_start")) c.clock_start = j.at("clock_start").get<Timestamp>();
    if (j.contains("fsync")) c.fsync = j.at("fsync").get<bool>();
    for (const Json& t : j.value("tables", Json::array())) {
      c.tables.push_back({t.at("name").get<std::string>(), resolve(t.at("csv").get<std::string>(), base)});
    }
    if (j.contains("monitor")) {
      const Json& m = j.at("monitor");
      c.monitor.volume_threshold = positive(m, "volume_threshold", c.monitor.volume_threshold);
      c.monitor.probing_threshold = positive(m, "probing_threshold", c.monitor.probing_threshold);
      c.monitor.window = positive(m, "window", c.monitor.window);
    }
    if (j.contains("break_glass")) {
      const Json& b = j.at("break_glass");
      c.break_glass.quorum = positive(b, "quorum", c.break_glass.quorum);
      c.break_glass.activation_window = positive(b, "window", c.break_glass.activation_window);
      for (const Json& a : b.value("accounts", Json::array())) c.break_glass_accounts.push_back(a.get<std::string>());
      for (const Json& a : b.value("approvers", Json::array())) c.break_glass.approvers.insert(a.get<std::string>());
    }
  } catch (const Json::exception& e) {
    bad(std::string("malformed config: ") + e.what());
  }
  c.check();
  return c;
}

BrokerConfig BrokerConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = Json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) bad("config " + path.string() + " is not valid JSON");
  return from_json(j, path.parent_path());
}

Json BrokerConfig::to_json() const {
  Json tables_json = Json::array();
  for (const auto& t : tables) tables_json.push_back({{"name", t.name}, {"csv", t.csv.string()}});
  Json j = {{"clock", clock == ClockMode::Logical ? "logical" : "wall"},
            {"clock_start", clock_start},
            {"fsync", fsync},
            {"tables", tables_json},
            {"monitor",
             {{"volume_threshold", monitor.volume_threshold},
              {"probing_threshold", monitor.probing_threshold},
              {"window", monitor.window}}},
            {"break_glass",
             {{"quorum", break_glass.quorum},
              {"window", break_glass.activation_window},
              {"accounts", break_glass_accounts},
              {"approvers", break_glass.approvers}}}};
  j["data_dir"] = data_dir ? Json(data_dir->string()) : Json(nullptr);
  if (!endpoint.empty()) j["endpoint"] = endpoint;
  return j;
}

void BrokerConfig::check() const {
  if (monitor.volume_threshold == 0 || monitor.probing_threshold == 0 || monitor.window <= 0) {
    bad("monitor thresholds must be positive");
  }
  if (break_glass.quorum < 2) bad("break-glass quorum must be at least 2");
  if (break_glass.activation_window <= 0) bad("break-glass window must be positive");
  for (const auto& t : tables) {
    if (t.name.empty()) bad("table entry without a name");
  }
  if (data_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*data_dir, ec);
    if (ec || !std::filesystem::is_directory(*data_dir)) bad("data directory " + data_dir->string() + " is unusable");
    const auto probe = *data_dir / ".write-probe";
    {
      std::ofstream out(probe);
      if (!out) bad("data directory " + data_dir->string() + " is not writable");
    }
    std::filesystem::remove(probe, ec);
  }
}

}  // namespace vaultgate::broker
