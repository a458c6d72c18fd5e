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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/audit/ledger.hpp"
#include "vaultgate/breakglass/break_glass.hpp"
#include "vaultgate/broker/config.hpp"
#include "vaultgate/contract/contract.hpp"
#include "vaultgate/enclave/enclave.hpp"
#include "vaultgate/gateway/gateway.hpp"
#include "vaultgate/monitor/monitor.hpp"
#include "vaultgate/store/table_store.hpp"

namespace vaultgate::broker {

// True for error codes that mean "refused by policy" rather than "broken
// request" or "broker failure". Responses carrying them set error.denied.
bool is_policy_error(ErrorCode code) noexcept;

// The composition root. Owns the store, contracts, enclaves, gateway,
// monitor, ledger and break-glass desk, and serializes every operation on
// them behind one lock. Ledger appends are therefore globally ordered.
//
// The request/response protocol (one JSON object per line):
//
//   {"id": ..., "op": "<name>", "args": {...}, "token": "..."}
//   {"id": ..., "ok": true,  "result": {...}}
//   {"id": ..., "ok": false, "error": {"code": "...", "message": "..."}}
//
// See docs/protocol.md for the op list and argument shapes.
class Broker final : private gateway::GatewayHost, private breakglass::Hooks {
 public:
  // Loads tables, then (with a data directory) contracts, credentials and the
  // ledger; restores the logical clock from the last ledger timestamp and
  // runs one sweep. Throws Error{BadConfig, StorageFailure, ...}.
  explicit Broker(BrokerConfig config);
  ~Broker() override;

  Broker(const Broker&) = delete;
  Broker& operator=(const Broker&) = delete;

  Json handle(const Json& request);
  // Never throws; a malformed line yields a BadRequest response.
  std::string handle_line(std::string_view line);

  // Convenience for in-process callers: builds the request, returns the
  // response object.
  Json call(const std::string& op, Json args = Json::object(), std::optional<std::string> token = std::nullopt);

  // Direct access for embedding and tests. Not synchronized; do not use while
  // another thread is inside handle().
  store::TabularStore& store() noexcept { return store_; }
  const audit::Ledger& ledger() const noexcept { return *ledger_; }
  audit::Ledger& ledger() noexcept { return *ledger_; }
  const gateway::Gateway& gateway() const noexcept { return gateway_; }
  const monitor::Monitor& monitor() const noexcept { return monitor_; }
  const breakglass::BreakGlassDesk& desk() const noexcept { return *desk_; }
  const std::map<std::string, enclave::Enclave, std::less<>>& enclaves() const noexcept { return enclaves_; }
  const std::map<std::string, contract::DataContract, std::less<>>& contracts() const noexcept { return contracts_; }
  Timestamp now() const;
  const BrokerConfig& config() const noexcept { return config_; }

 private:
  Json dispatch(const std::string& op, const Json& args, const std::optional<std::string>& token);

  Json op_submit_contract(const Json& args);
  Json op_activate_contract(const Json& args);
  Json op_revoke_contract(const Json& args);
  Json op_create_enclave(const Json& args);
  Json op_broker_enclave(const Json& args);
  Json op_destroy_enclave(const Json& args);
  Json op_open_session(const Json& args, const std::optional<std::string>& token);
  Json op_query(const Json& args);
  Json op_close_session(const Json& args);
  Json op_alerts(const Json& args) const;
  Json op_audit_export(const Json& args) const;
  Json op_audit_verify(const Json& args) const;
  Json op_bg_request(const Json& args);
  Json op_bg_approve(const Json& args);
  Json op_bg_deny(const Json& args);
  Json op_sweep(const Json& args);
  Json op_tick(const Json& args);
  Json op_live_grants(const Json& args) const;
  Json op_status(const Json& args) const;

  // Shared pieces.
  contract::DataContract& contract_ref(std::string_view contract_id);
  enclave::Enclave& enclave_ref(std::string_view enclave_id);
  std::string issue_token(const std::string& contract_id);
  void persist_contract(const contract::DataContract& c);
  void persist_credentials();
  void load_persisted();
  // Audits and applies the records appended to `e.history()` since `mark`,
  // killing sessions when the enclave leaves Serving.
  void publish_transitions(const enclave::Enclave& e, std::size_t mark);
  enclave::Enclave& broker_flow(const contract::DataContract& c, Timestamp now);
  // Ends every live enclave of the contract; returns their ids.
  std::vector<std::string> end_enclaves(const std::string& contract_id, enclave::Cause cause, Timestamp now);
  Json sweep(Timestamp now);
  void audit_alert(const monitor::Alert& alert);
  audit::Event append(audit::Kind kind, const std::string& actor, Json payload);

  // GatewayHost.
  const enclave::Enclave* find_enclave(std::string_view enclave_id) const override;
  const contract::DataContract* find_contract(std::string_view contract_id) const override;
  const SchemaCatalog& catalog() const override { return store_.catalog(); }
  bool token_matches(const contract::DataContract& c, std::string_view token) const override;
  std::string next_id(std::string_view prefix) override;
  void on_session_opened(const gateway::Session& s) override;
  void on_session_closed(const gateway::Session& s, Timestamp now) override;
  void on_query(const gateway::QueryEvent& event) override;

  // breakglass::Hooks.
  breakglass::Activation activate(const breakglass::Request& request, Timestamp now) override;
  bool contract_live(std::string_view contract_id, Timestamp now) const override;
  void deactivate(const breakglass::Request& request, Timestamp now) override;
  void audit(audit::Kind kind, const std::string& actor, Json payload, Timestamp now) override;
  void on_alert(const monitor::Alert& alert) override;

  BrokerConfig config_;
  mutable std::mutex mu_;
  store::TabularStore store_;
  std::unique_ptr<audit::Ledger> ledger_;
  monitor::Monitor monitor_;
  gateway::Gateway gateway_;
  std::unique_ptr<breakglass::BreakGlassDesk> desk_;
  std::map<std::string, contract::DataContract, std::less<>> contracts_;
  std::map<std::string, enclave::Enclave, std::less<>> enclaves_;
  std::map<std::string, std::string, std::less<>> token_hashes_;  // contract_id -> sha256(token)
  Timestamp logical_now_ = 0;
  std::uint64_t next_serial_ = 1;
  // Filled by deactivate() while a sweep is running.
  std::map<std::string, std::vector<std::string>>* sweep_enclaves_ = nullptr;
};

}  // namespace vaultgate::broker
