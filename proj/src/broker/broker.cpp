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


#include "vaultgate/broker/broker.hpp"

#include <openssl/rand.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vaultgate/contract/codec.hpp"
#include "vaultgate/contract/dsl.hpp"
#include "vaultgate/contract/validate.hpp"
#include "vaultgate/core/error.hpp"
#include "vaultgate/core/sha256.hpp"
#include "vaultgate/store/csv.hpp"

namespace vaultgate::broker {

namespace fs = std::filesystem;

namespace {

// A gateway denial, carried up to the response writer.
class Denied : public std::runtime_error {
 public:
  explicit Denied(const gateway::Decision& d) : std::runtime_error(d.reason), decision(d) {}
  gateway::Decision decision;
};

[[noreturn]] void bad_request(const std::string& what) { throw Error(ErrorCode::BadRequest, what); }

const Json& require(const Json& args, const char* key) {
  if (!args.contains(key)) bad_request(std::string("missing argument '") + key + "'");
  return args.at(key);
}

std::string require_string(const Json& args, const char* key) {
  const Json& v = require(args, key);
  if (!v.is_string()) bad_request(std::string("argument '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& args, const char* key) {
  if (!args.contains(key) || args.at(key).is_null()) return std::nullopt;
  if (!args.at(key).is_string()) bad_request(std::string("argument '") + key + "' must be a string");
  return args.at(key).get<std::string>();
}

std::optional<Timestamp> optional_time(const Json& args, const char* key) {
  if (!args.contains(key) || args.at(key).is_null()) return std::nullopt;
  if (!args.at(key).is_number_integer()) bad_request(std::string("argument '") + key + "' must be an integer");
  return args.at(key).get<Timestamp>();
}

std::string actor_of(const Json& args) { return optional_string(args, "actor").value_or("operator"); }

Json value_to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Date>) {
          return format_date(x);
        } else {
          return x;
        }
      },
      v);
}

Json alert_to_json(const monitor::Alert& a) {
  return {{"alert_id", a.alert_id},
          {"rule", std::string(to_string(a.rule))},
          {"severity", std::string(to_string(a.severity))},
          {"session_id", a.session_id},
          {"contract_id", a.contract_id},
          {"enclave_id", a.enclave_id},
          {"evidence", a.evidence},
          {"at", a.at},
          {"detail", a.detail}};
}

// Contract from either DSL text ("text") or its JSON form ("contract").
contract::DataContract contract_arg(const Json& args, const char* text_key, const char* json_key) {
  if (args.contains(text_key)) return contract::parse_contract(require_string(args, text_key));
  if (args.contains(json_key)) return contract::from_json(args.at(json_key));
  bad_request(std::string("missing argument '") + text_key + "' or '" + json_key + "'");
}

void write_atomically(const fs::path& path, const std::string& bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    out.flush();
    if (!out) throw Error(ErrorCode::StorageFailure, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::StorageFailure, "cannot replace " + path.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::StorageFailure, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string random_token() {
  unsigned char bytes[16];
  if (RAND_bytes(bytes, sizeof bytes) != 1) throw Error(ErrorCode::Internal, "no randomness for token");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned char b : bytes) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

Json error_body(ErrorCode code, const std::string& message) {
  Json e = {{"code", std::string(to_string(code))}, {"message", message}};
  if (is_policy_error(code)) e["denied"] = true;
  return e;
}

}  // namespace

bool is_policy_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ValidationFailed:
    case ErrorCode::ContractNotLive:
    case ErrorCode::ContractExpired:
    case ErrorCode::EnclaveNotServing:
    case ErrorCode::BadToken:
    case ErrorCode::SessionDead:
    case ErrorCode::UnauthorizedApprover:
    case ErrorCode::SelfApproval:
    case ErrorCode::DuplicateApproval:
    case ErrorCode::StandingPrivilege:
      return true;
    default:
      return false;
  }
}

Broker::Broker(BrokerConfig config) : config_(std::move(config)), gateway_(*this) {
  config_.check();
  monitor_.configure(config_.monitor);
  breakglass::Hooks& hooks = *this;
  desk_ = std::make_unique<breakglass::BreakGlassDesk>(config_.break_glass, monitor_, hooks);
  for (const auto& account : config_.break_glass_accounts) desk_->register_account(account);
  for (const auto& t : config_.tables) {
    auto loaded = store::load_table_csv(t.csv);
    store_.register_table(t.name, std::move(loaded.schema), std::move(loaded.rows));
  }
  logical_now_ = config_.clock_start;
  if (config_.data_dir) {
    load_persisted();
  } else {
    ledger_ = std::make_unique<audit::Ledger>();
  }
  sweep(now());
}

Broker::~Broker() = default;

void Broker::load_persisted() {
  const fs::path dir = *config_.data_dir;
  fs::create_directories(dir / "contracts");
  ledger_ = std::make_unique<audit::Ledger>(dir / "audit.jsonl", config_.fsync);
  for (const auto& entry : fs::directory_iterator(dir / "contracts")) {
    if (entry.path().extension() != ".json") continue;
    const Json j = Json::parse(read_file(entry.path()), nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::StorageFailure, "corrupt contract file " + entry.path().string());
    auto c = contract::from_json(j);
    if (c.contract_id != entry.path().stem().string()) {
      throw Error(ErrorCode::StorageFailure, "contract file " + entry.path().string() + " names another contract");
    }
    contracts_.emplace(c.contract_id, std::move(c));
  }
  const fs::path creds = dir / "credentials.json";
  if (fs::exists(creds)) {
    const Json j = Json::parse(read_file(creds), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::StorageFailure, "corrupt credentials file");
    for (const auto& [id, hash] : j.items()) token_hashes_[id] = hash.get<std::string>();
  }
  if (!ledger_->events().empty()) {
    logical_now_ = std::max(logical_now_, ledger_->events().back().timestamp);
  }
  // Every generated id is followed by at least one ledger event, so numbering
  // past the ledger length cannot collide with an earlier run.
  next_serial_ = ledger_->size() + 1;
  monitor_.set_next_alert_number(ledger_->size() + 1);
}

Timestamp Broker::now() const {
  if (config_.clock == ClockMode::Logical) return logical_now_;
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

// ---------------------------------------------------------------------------
// Protocol

Json Broker::call(const std::string& op, Json args, std::optional<std::string> token) {
  Json request = {{"id", "local"}, {"op", op}, {"args", std::move(args)}};
  if (token) request["token"] = *token;
  return handle(request);
}

std::string Broker::handle_line(std::string_view line) {
  Json request = Json::parse(line, nullptr, false);
  Json response;
  if (request.is_discarded()) {
    response = {{"id", nullptr}, {"ok", false}, {"error", error_body(ErrorCode::BadRequest, "malformed JSON")}};
  } else {
    response = handle(request);
  }
  return canonical_dump(response);
}

Json Broker::handle(const Json& request) {
  Json response = {{"id", nullptr}};
  auto fail = [&](Json error) {
    response["ok"] = false;
    response["error"] = std::move(error);
    return response;
  };
  if (!request.is_object()) return fail(error_body(ErrorCode::BadRequest, "request must be a JSON object"));
  if (request.contains("id")) response["id"] = request.at("id");
  try {
    const auto op = optional_string(request, "op");
    if (!op) bad_request("missing 'op'");
    const Json args = request.contains("args") ? request.at("args") : Json::object();
    if (!args.is_object()) bad_request("'args' must be an object");
    const auto token = optional_string(request, "token");

    std::lock_guard lock(mu_);
    response["result"] = dispatch(*op, args, token);
    response["ok"] = true;
    return response;
  } catch (const Denied& d) {
    const std::string code(to_string(*d.decision.code));
    return fail({{"code", code}, {"message", d.decision.reason}, {"denied", true}});
  } catch (const ParseError& e) {
    Json err = error_body(e.code(), e.what());
    err["line"] = e.line();
    err["column"] = e.column();
    return fail(std::move(err));
  } catch (const Error& e) {
    return fail(error_body(e.code(), e.what()));
  } catch (const Json::exception& e) {
    return fail(error_body(ErrorCode::BadRequest, e.what()));
  } catch (const std::exception& e) {
    return fail(error_body(ErrorCode::Internal, e.what()));
  }
}

Json Broker::dispatch(const std::string& op, const Json& args, const std::optional<std::string>& token) {
  if (op == "submit_contract") return op_submit_contract(args);
  if (op == "activate_contract") return op_activate_contract(args);
  if (op == "revoke_contract") return op_revoke_contract(args);
  if (op == "create_enclave") return op_create_enclave(args);
  if (op == "broker_enclave") return op_broker_enclave(args);
  if (op == "destroy_enclave") return op_destroy_enclave(args);
  if (op == "open_session") return op_open_session(args, token);
  if (op == "query") return op_query(args);
  if (op == "close_session") return op_close_session(args);
  if (op == "alerts") return op_alerts(args);
  if (op == "audit_export") return op_audit_export(args);
  if (op == "audit_verify") return op_audit_verify(args);
  if (op == "bg_request") return op_bg_request(args);
  if (op == "bg_approve") return op_bg_approve(args);
  if (op == "bg_deny") return op_bg_deny(args);
  if (op == "sweep") return op_sweep(args);
  if (op == "tick") return op_tick(args);
  if (op == "live_grants") return op_live_grants(args);
  if (op == "status") return op_status(args);
  throw Error(ErrorCode::UnknownOp, "unknown op '" + op + "'");
}

// ---------------------------------------------------------------------------
// Contracts

Json Broker::op_submit_contract(const Json& args) {
  contract::DataContract c = contract_arg(args, "text", "contract");
  if (c.status != contract::Status::Draft || c.activated_at || c.origin != contract::Origin::Standard) {
    bad_request("submitted contracts must be Standard drafts");
  }
  if (!contract::valid_contract_id(c.contract_id)) {
    throw Error(ErrorCode::BadContractId, "contract id '" + c.contract_id + "' is not a valid identifier");
  }
  if (contracts_.count(c.contract_id) != 0) {
    throw Error(ErrorCode::DuplicateContract, "contract '" + c.contract_id + "' already exists");
  }
  if (desk_->is_account(c.principal)) {
    throw Error(ErrorCode::StandingPrivilege,
                "'" + c.principal + "' is a break-glass account and may only receive access through bg_request");
  }
  const auto report = contract::validate_contract(c, store_.catalog());
  if (!report.ok()) throw Error(ErrorCode::ValidationFailed, report.summary());

  const std::string digest = sha256_hex(contract::canonical_encode(c));
  append(audit::Kind::ContractSubmitted, actor_of(args),
         {{"contract_id", c.contract_id},
          {"principal", c.principal},
          {"purpose", c.purpose},
          {"digest", digest},
          {"contract", contract::to_json(c)}});
  persist_contract(c);
  const std::string id = c.contract_id;
  contracts_.emplace(id, std::move(c));
  return {{"contract_id", id}, {"status", "Draft"}, {"digest", digest}};
}

Json Broker::op_activate_contract(const Json& args) {
  auto& c = contract_ref(require_string(args, "contract_id"));
  const Timestamp t = now();
  contract::DataContract next = contract::activate(c, t);
  append(audit::Kind::ContractActivated, actor_of(args),
         {{"contract_id", next.contract_id},
          {"principal", next.principal},
          {"origin", std::string(to_string(next.origin))},
          {"activated_at", t},
          {"expires_at", t + next.ttl}});
  c = std::move(next);
  persist_contract(c);
  const std::string token = issue_token(c.contract_id);
  return {{"contract_id", c.contract_id},
          {"status", "Active"},
          {"activated_at", t},
          {"expires_at", t + c.ttl},
          {"token", token}};
}

Json Broker::op_revoke_contract(const Json& args) {
  auto& c = contract_ref(require_string(args, "contract_id"));
  const Timestamp t = now();
  contract::DataContract next = contract::revoke(c);
  append(audit::Kind::ContractRevoked, actor_of(args),
         {{"contract_id", next.contract_id}, {"reason", optional_string(args, "reason").value_or("")}});
  c = std::move(next);
  persist_contract(c);
  token_hashes_.erase(c.contract_id);
  persist_credentials();
  const auto ended = end_enclaves(c.contract_id, enclave::Cause::Revocation, t);
  return {{"contract_id", c.contract_id}, {"status", "Revoked"}, {"enclaves", ended}};
}

contract::DataContract& Broker::contract_ref(std::string_view contract_id) {
  const auto it = contracts_.find(contract_id);
  if (it == contracts_.end()) {
    throw Error(ErrorCode::UnknownContract, "no contract '" + std::string(contract_id) + "'");
  }
  return it->second;
}

std::string Broker::issue_token(const std::string& contract_id) {
  std::string token = random_token();
  token_hashes_[contract_id] = sha256_hex(token);
  persist_credentials();
  return token;
}

void Broker::persist_contract(const contract::DataContract& c) {
  if (!config_.data_dir) return;
  write_atomically(*config_.data_dir / "contracts" / (c.contract_id + ".json"), contract::canonical_encode(c) + "\n");
}

void Broker::persist_credentials() {
  if (!config_.data_dir) return;
  Json j = Json::object();
  for (const auto& [id, hash] : token_hashes_) j[id] = hash;
  write_atomically(*config_.data_dir / "credentials.json", canonical_dump(j) + "\n");
}

// ---------------------------------------------------------------------------
// Enclaves

enclave::Enclave& Broker::enclave_ref(std::string_view enclave_id) {
  const auto it = enclaves_.find(enclave_id);
  if (it == enclaves_.end()) throw Error(ErrorCode::UnknownEnclave, "no enclave '" + std::string(enclave_id) + "'");
  return it->second;
}

void Broker::publish_transitions(const enclave::Enclave& e, std::size_t mark) {
  std::vector<std::string> killed;
  if (e.state() != enclave::State::Serving) killed = gateway_.invalidate_enclave(e.id());
  const auto& history = e.history();
  for (std::size_t i = mark; i < history.size(); ++i) {
    const auto& rec = history[i];
    Json payload = {{"enclave_id", rec.enclave_id},
                    {"contract_id", e.contract_id()},
                    {"from", rec.from ? Json(std::string(to_string(*rec.from))) : Json(nullptr)},
                    {"to", std::string(to_string(rec.to))},
                    {"cause", std::string(to_string(rec.cause))}};
    if (i + 1 == history.size() && !killed.empty()) payload["sessions_invalidated"] = killed;
    append(audit::Kind::EnclaveTransition, "broker", std::move(payload));
  }
}

enclave::Enclave& Broker::broker_flow(const contract::DataContract& c, Timestamp t) {
  const std::string id = next_id("enc");
  auto [it, inserted] = enclaves_.emplace(id, enclave::Enclave::create(id, c, t));
  if (!inserted) throw Error(ErrorCode::Internal, "enclave id collision");
  enclave::Enclave& e = it->second;
  publish_transitions(e, 0);

  std::size_t mark = e.history().size();
  try {
    e.provision(store_, t);
  } catch (const Error& err) {
    publish_transitions(e, mark);
    throw Error(err.code(), std::string(err.what()) + "; enclave " + id + " revoked");
  }
  publish_transitions(e, mark);
  mark = e.history().size();
  e.seal(t);
  publish_transitions(e, mark);
  mark = e.history().size();
  e.open_gate(t);
  publish_transitions(e, mark);
  return e;
}

std::vector<std::string> Broker::end_enclaves(const std::string& contract_id, enclave::Cause cause, Timestamp t) {
  std::vector<std::string> ended;
  for (auto& [id, e] : enclaves_) {
    if (e.contract_id() != contract_id || !e.is_live_state()) continue;
    const std::size_t mark = e.history().size();
    e.expire_or_revoke(cause, t);
    publish_transitions(e, mark);
    ended.push_back(id);
  }
  return ended;
}

Json Broker::op_create_enclave(const Json& args) {
  const auto& c = contract_ref(require_string(args, "contract_id"));
  const std::string id = next_id("enc");
  auto [it, inserted] = enclaves_.emplace(id, enclave::Enclave::create(id, c, now()));
  if (!inserted) throw Error(ErrorCode::Internal, "enclave id collision");
  publish_transitions(it->second, 0);
  return {{"enclave_id", id}, {"contract_id", c.contract_id}, {"state", "Defined"}};
}

Json Broker::op_broker_enclave(const Json& args) {
  const auto& c = contract_ref(require_string(args, "contract_id"));
  const auto& e = broker_flow(c, now());
  Json segments = Json::array();
  for (const auto& [grant, seg] : e.segments()) {
    segments.push_back({{"source", seg.origin}, {"columns", seg.column_names()}, {"rows", seg.rows.size()}});
  }
  return {{"enclave_id", e.id()},
          {"contract_id", c.contract_id},
          {"state", std::string(to_string(e.state()))},
          {"segments", segments},
          {"digest", e.segments_digest()}};
}

Json Broker::op_destroy_enclave(const Json& args) {
  auto& e = enclave_ref(require_string(args, "enclave_id"));
  const std::size_t mark = e.history().size();
  e.destroy(now());
  publish_transitions(e, mark);
  return {{"enclave_id", e.id()}, {"state", "Destroyed"}};
}

// ---------------------------------------------------------------------------
// Sessions and queries

Json Broker::op_open_session(const Json& args, const std::optional<std::string>& token) {
  const auto t = token ? token : optional_string(args, "token");
  if (!t) throw Error(ErrorCode::BadToken, "open_session requires a token");
  const auto& s = gateway_.open_session(require_string(args, "enclave_id"), *t, now());
  return {{"session_id", s.session_id},
          {"enclave_id", s.enclave_id},
          {"contract_id", s.contract_id},
          {"principal", s.principal}};
}

Json Broker::op_query(const Json& args) {
  const auto outcome = gateway_.execute(require_string(args, "session_id"), require_string(args, "statement"), now());
  if (!outcome.decision.allowed()) throw Denied(outcome.decision);
  const auto& r = *outcome.result;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json cells = Json::array();
    for (const auto& v : row) cells.push_back(value_to_json(v));
    rows.push_back(std::move(cells));
  }
  return {{"columns", r.columns}, {"rows", std::move(rows)}, {"truncated", r.truncated}};
}

Json Broker::op_close_session(const Json& args) {
  const std::string id = require_string(args, "session_id");
  gateway_.close_session(id, now());
  return {{"session_id", id}, {"closed", true}};
}

// ---------------------------------------------------------------------------
// Monitoring and audit

Json Broker::op_alerts(const Json& args) const {
  monitor::AlertFilter f;
  if (auto rule = optional_string(args, "rule")) {
    f.rule = monitor::parse_rule(*rule);
    if (!f.rule) bad_request("unknown rule '" + *rule + "'");
  }
  f.contract_id = optional_string(args, "contract_id");
  f.enclave_id = optional_string(args, "enclave_id");
  f.session_id = optional_string(args, "session_id");
  f.since = optional_time(args, "since");
  f.until = optional_time(args, "until");
  Json out = Json::array();
  for (const auto& a : monitor_.alerts(f)) out.push_back(alert_to_json(a));
  return {{"alerts", std::move(out)}};
}

Json Broker::op_audit_export(const Json& args) const {
  audit::Filter f;
  if (auto kind = optional_string(args, "kind")) {
    f.kind = audit::parse_kind(*kind);
    if (!f.kind) bad_request("unknown audit kind '" + *kind + "'");
  }
  f.actor = optional_string(args, "actor");
  f.contract_id = optional_string(args, "contract_id");
  f.since = optional_time(args, "since");
  f.until = optional_time(args, "until");
  Json events = Json::array();
  for (const auto& e : ledger_->query(f)) events.push_back(audit::to_json(e));
  const std::size_t count = events.size();
  return {{"events", std::move(events)}, {"count", count}, {"head_hash", ledger_->head_hash()}};
}

Json Broker::op_audit_verify(const Json&) const {
  audit::VerifyResult r;
  std::size_t count = ledger_->size();
  if (const auto& path = ledger_->path()) {
    r = audit::verify_file(*path, audit::read_head(*path));
  } else {
    r = audit::verify_chain(ledger_->events());
  }
  Json out = {{"ok", r.ok()}, {"events", count}};
  if (!r.ok()) {
    out["first_bad_seq"] = *r.first_bad_seq;
    out["reason"] = r.reason;
  }
  return out;
}

audit::Event Broker::append(audit::Kind kind, const std::string& actor, Json payload) {
  return ledger_->append(now(), actor, kind, std::move(payload));
}

void Broker::audit_alert(const monitor::Alert& a) {
  append(audit::Kind::AlertRaised, "monitor", alert_to_json(a));
}

// ---------------------------------------------------------------------------
// Break-glass

Json Broker::op_bg_request(const Json& args) {
  const std::string account = require_string(args, "account");
  contract::DataContract tmpl = contract_arg(args, "template", "contract");
  if (!contract::valid_contract_id(tmpl.contract_id)) {
    throw Error(ErrorCode::BadContractId, "contract id '" + tmpl.contract_id + "' is not a valid identifier");
  }
  const auto& r = desk_->request_access(account, std::move(tmpl), optional_string(args, "justification").value_or(""),
                                        store_.catalog(), next_id("bgr"), now());
  return {{"request_id", r.request_id},
          {"status", std::string(to_string(r.status))},
          {"quorum", r.quorum},
          {"window", r.activation_window}};
}

Json Broker::op_bg_approve(const Json& args) {
  const auto out = desk_->approve(require_string(args, "request_id"), require_string(args, "approver"), now());
  const auto& r = *out.request;
  Json j = {{"request_id", r.request_id}, {"status", std::string(to_string(r.status))}, {"approvals", r.approvals}};
  if (out.activation) {
    j["contract_id"] = out.activation->contract_id;
    j["enclave_id"] = out.activation->enclave_id;
    j["token"] = out.activation->token;
    j["expires_at"] = *r.activated_at + r.activation_window;
  }
  if (out.alert) j["alert_id"] = out.alert->alert_id;
  return j;
}

Json Broker::op_bg_deny(const Json& args) {
  const auto& r = desk_->deny(require_string(args, "request_id"), actor_of(args), now());
  return {{"request_id", r.request_id}, {"status", std::string(to_string(r.status))}};
}

breakglass::Activation Broker::activate(const breakglass::Request& request, Timestamp t) {
  contract::DataContract c = request.contract_template;
  c.contract_id = c.contract_id + "." + request.request_id;
  c.origin = contract::Origin::BreakGlass;
  c.ttl = request.activation_window;
  if (contracts_.count(c.contract_id) != 0) {
    throw Error(ErrorCode::DuplicateContract, "contract '" + c.contract_id + "' already exists");
  }
  append(audit::Kind::ContractSubmitted, request.account_id,
         {{"contract_id", c.contract_id},
          {"principal", c.principal},
          {"purpose", c.purpose},
          {"digest", sha256_hex(contract::canonical_encode(c))},
          {"contract", contract::to_json(c)},
          {"request_id", request.request_id}});
  c = contract::activate(c, t);
  append(audit::Kind::ContractActivated, request.approvals.back(),
         {{"contract_id", c.contract_id},
          {"principal", c.principal},
          {"origin", "BreakGlass"},
          {"request_id", request.request_id},
          {"approvals", request.approvals},
          {"activated_at", t},
          {"expires_at", t + c.ttl}});
  const std::string id = c.contract_id;
  auto& stored = contracts_.emplace(id, std::move(c)).first->second;
  persist_contract(stored);
  const std::string token = issue_token(id);
  try {
    const auto& e = broker_flow(stored, t);
    return {id, e.id(), token};
  } catch (...) {
    stored = contract::revoke(stored);
    append(audit::Kind::ContractRevoked, "broker", {{"contract_id", id}, {"reason", "enclave provisioning failed"}});
    persist_contract(stored);
    token_hashes_.erase(id);
    persist_credentials();
    throw;
  }
}

bool Broker::contract_live(std::string_view contract_id, Timestamp t) const {
  const auto* c = find_contract(contract_id);
  return c != nullptr && contract::is_live(*c, t);
}

void Broker::deactivate(const breakglass::Request& request, Timestamp t) {
  auto& c = contract_ref(*request.activated_contract_id);
  if (c.status == contract::Status::Active) {
    c = contract::expire(c, t);
    append(audit::Kind::ContractExpired, "system",
           {{"contract_id", c.contract_id}, {"request_id", request.request_id}, {"cause", "BreakGlassAuto"}});
    persist_contract(c);
  }
  token_hashes_.erase(c.contract_id);
  persist_credentials();
  auto ended = end_enclaves(c.contract_id, enclave::Cause::BreakGlassAuto, t);
  if (sweep_enclaves_ != nullptr) (*sweep_enclaves_)[c.contract_id] = std::move(ended);
}

void Broker::audit(audit::Kind kind, const std::string& actor, Json payload, Timestamp) {
  append(kind, actor, std::move(payload));
}

void Broker::on_alert(const monitor::Alert& alert) { audit_alert(alert); }

// ---------------------------------------------------------------------------
// Clock and expiry

Json Broker::op_sweep(const Json&) { return sweep(now()); }

Json Broker::sweep(Timestamp t) {
  Json expired = Json::array();

  std::map<std::string, std::vector<std::string>> bg_enclaves;
  sweep_enclaves_ = &bg_enclaves;
  std::vector<std::string> auto_revoked;
  try {
    auto_revoked = desk_->sweep(t);
  } catch (...) {
    sweep_enclaves_ = nullptr;
    throw;
  }
  sweep_enclaves_ = nullptr;
  for (const auto& rid : auto_revoked) {
    const auto& cid = *desk_->find(rid)->activated_contract_id;
    expired.push_back({{"contract_id", cid}, {"enclaves", bg_enclaves[cid]}, {"auto_revoked", rid}});
  }

  for (auto& [id, c] : contracts_) {
    if (c.status != contract::Status::Active || contract::is_live(c, t)) continue;
    c = contract::expire(c, t);
    append(audit::Kind::ContractExpired, "system", {{"contract_id", id}, {"cause", "Expiry"}});
    persist_contract(c);
    token_hashes_.erase(id);
    persist_credentials();
    const auto ended = end_enclaves(id, enclave::Cause::Expiry, t);
    expired.push_back({{"contract_id", id}, {"enclaves", ended}, {"auto_revoked", nullptr}});
  }
  return {{"expired", std::move(expired)}};
}

Json Broker::op_tick(const Json& args) {
  if (config_.clock != ClockMode::Logical) throw Error(ErrorCode::ClockNotLogical, "tick needs the logical clock");
  const Json& s = require(args, "seconds");
  if (!s.is_number_integer() || s.get<std::int64_t>() < 0) bad_request("'seconds' must be a non-negative integer");
  logical_now_ += s.get<std::int64_t>();
  return {{"now", logical_now_}};
}

Json Broker::op_live_grants(const Json&) const {
  const Timestamp t = now();
  Json grants = Json::array();
  for (const auto& [id, c] : contracts_) {
    if (!contract::is_live(c, t)) continue;
    for (const auto& g : c.grants) {
      grants.push_back({{"contract_id", id},
                        {"principal", c.principal},
                        {"origin", std::string(to_string(c.origin))},
                        {"source", g.source},
                        {"expires_at", *c.activated_at + c.ttl}});
    }
  }
  return {{"grants", std::move(grants)}, {"now", t}};
}

Json Broker::op_status(const Json&) const {
  std::size_t live = 0;
  for (const auto& [id, e] : enclaves_) live += e.state() == enclave::State::Serving ? 1 : 0;
  return {{"now", now()},
          {"clock", config_.clock == ClockMode::Logical ? "logical" : "wall"},
          {"contracts", contracts_.size()},
          {"enclaves_serving", live},
          {"audit_events", ledger_->size()},
          {"head_hash", ledger_->head_hash()},
          {"tables", store_.catalog().names()}};
}

// ---------------------------------------------------------------------------
// GatewayHost

const enclave::Enclave* Broker::find_enclave(std::string_view enclave_id) const {
  const auto it = enclaves_.find(enclave_id);
  return it == enclaves_.end() ? nullptr : &it->second;
}

const contract::DataContract* Broker::find_contract(std::string_view contract_id) const {
  const auto it = contracts_.find(contract_id);
  return it == contracts_.end() ? nullptr : &it->second;
}

bool Broker::token_matches(const contract::DataContract& c, std::string_view token) const {
  const auto it = token_hashes_.find(c.contract_id);
  return it != token_hashes_.end() && it->second == sha256_hex(token);
}

std::string Broker::next_id(std::string_view prefix) {
  return std::string(prefix) + "-" + std::to_string(next_serial_++);
}

void Broker::on_session_opened(const gateway::Session& s) {
  append(audit::Kind::SessionOpened, s.principal,
         {{"session_id", s.session_id}, {"enclave_id", s.enclave_id}, {"contract_id", s.contract_id}});
}

void Broker::on_session_closed(const gateway::Session& s, Timestamp) {
  append(audit::Kind::SessionClosed, s.principal,
         {{"session_id", s.session_id}, {"enclave_id", s.enclave_id}, {"contract_id", s.contract_id}});
}

void Broker::on_query(const gateway::QueryEvent& ev) {
  Json payload = {{"session_id", ev.session_id},
                  {"enclave_id", ev.enclave_id},
                  {"contract_id", ev.contract_id},
                  {"statement", ev.statement},
                  {"verdict", ev.allowed() ? "Allow" : "Deny"},
                  {"rows_returned", ev.rows_returned}};
  if (ev.kind) payload["statement_kind"] = std::string(to_string(*ev.kind));
  if (ev.decision.code) payload["deny_code"] = std::string(to_string(*ev.decision.code));
  if (ev.error) payload["error"] = std::string(to_string(*ev.error));
  if (!ev.decision.reason.empty()) payload["reason"] = ev.decision.reason;
  append(ev.allowed() ? audit::Kind::QueryExecuted : audit::Kind::QueryDenied,
         ev.principal.empty() ? "unknown" : ev.principal, std::move(payload));

  monitor::MonitorEvent me;
  me.session_id = ev.session_id;
  me.enclave_id = ev.enclave_id;
  me.contract_id = ev.contract_id;
  me.allowed = ev.allowed();
  me.rows_returned = ev.rows_returned;
  me.at = ev.at;
  if (!ev.kind) {
    me.kind = monitor::EventKind::Invalid;
  } else if (*ev.kind == gateway::StatementKind::CopyInto) {
    me.kind = monitor::EventKind::CopyInto;
  } else if (*ev.kind == gateway::StatementKind::ShowTables) {
    me.kind = monitor::EventKind::ShowTables;
  } else {
    me.kind = ev.star ? monitor::EventKind::SelectStar : monitor::EventKind::Select;
  }
  for (const auto& alert : monitor_.record_event(std::move(me))) audit_alert(alert);
}

}  // namespace vaultgate::broker
