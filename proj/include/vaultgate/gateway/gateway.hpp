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
#include "vaultgate/core/catalog.hpp"
#include "vaultgate/core/error.hpp"
#include "vaultgate/enclave/enclave.hpp"
#include "vaultgate/gateway/query.hpp"

namespace vaultgate::gateway {

enum class Verdict { Allow, Deny };

enum class DenyCode {
  UnknownTable,
  ColumnOutOfScope,
  StatementForbidden,
  SessionDead,
  ContractExpired,
  // Reserved: grant row limits truncate results rather than deny them.
  RowLimitExceeded,
};

std::string_view to_string(Verdict verdict) noexcept;
std::string_view to_string(DenyCode code) noexcept;
std::optional<DenyCode> parse_deny_code(std::string_view text) noexcept;

struct Decision {
  Verdict verdict = Verdict::Allow;
  std::optional<DenyCode> code;  // set iff Deny
  std::string reason;

  static Decision allow() { return {}; }
  static Decision deny(DenyCode code, std::string reason) {
    return {Verdict::Deny, code, std::move(reason)};
  }
  bool allowed() const noexcept { return verdict == Verdict::Allow; }
};

struct Session {
  std::string session_id;
  std::string enclave_id;
  std::string contract_id;
  std::string principal;
  Timestamp opened_at = 0;
  bool closed = false;
};

struct QueryResult {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  bool truncated = false;
};

// Policy decision for one statement. Checks run against the contract itself,
// independent of what the segments happen to contain. First match wins:
// COPY INTO, elapsed TTL, dead session, non-live contract, unknown table,
// out-of-scope column.
Decision authorize(const QueryAst& ast, const contract::DataContract& c, const SchemaCatalog& catalog,
                   const Session& session, enclave::State enclave_state, Timestamp now);

// Runs an authorized Select or ShowTables against the enclave's segments only.
// Throws Error{TypeMismatch} for a literal that does not fit its column.
QueryResult evaluate(const QueryAst& ast, const enclave::Enclave& e);

// One record per execute() call, allowed or not.
struct QueryEvent {
  std::string session_id;
  std::string enclave_id;
  std::string contract_id;
  std::string principal;
  std::string statement;
  std::optional<StatementKind> kind;  // empty when the statement did not parse
  bool star = false;
  Decision decision;
  // ParseError / TypeMismatch. The decision is then Deny without a deny code.
  std::optional<ErrorCode> error;
  std::size_t rows_returned = 0;
  Timestamp at = 0;

  bool allowed() const noexcept { return decision.allowed() && !error; }
};

// What the gateway needs from its surroundings. The broker implements this;
// tests supply small fakes.
class GatewayHost {
 public:
  virtual ~GatewayHost() = default;

  virtual const enclave::Enclave* find_enclave(std::string_view enclave_id) const = 0;
  virtual const contract::DataContract* find_contract(std::string_view contract_id) const = 0;
  virtual const SchemaCatalog& catalog() const = 0;
  virtual bool token_matches(const contract::DataContract& c, std::string_view token) const = 0;
  virtual std::string next_id(std::string_view prefix) = 0;

  // Reporting hooks. Each is called exactly once per corresponding event,
  // before the gateway operation returns.
  virtual void on_session_opened(const Session& s) = 0;
  virtual void on_session_closed(const Session& s, Timestamp now) = 0;
  virtual void on_query(const QueryEvent& event) = 0;
};

struct ExecuteOutcome {
  Decision decision;
  std::optional<QueryResult> result;  // set iff allowed
};

class Gateway {
 public:
  explicit Gateway(GatewayHost& host) : host_(host) {}

  // Throws Error{UnknownEnclave, BadToken, EnclaveNotServing, ContractExpired}.
  const Session& open_session(std::string_view enclave_id, std::string_view token, Timestamp now);

  // parse -> authorize -> evaluate. Denials come back as a Deny decision;
  // ParseError and TypeMismatch are thrown. Every call reports exactly one
  // QueryEvent to the host first.
  ExecuteOutcome execute(std::string_view session_id, std::string_view text, Timestamp now);

  // Throws Error{UnknownSession} or Error{SessionDead}.
  void close_session(std::string_view session_id, Timestamp now);

  // Marks every session of the enclave dead; called on enclave transitions.
  // Returns the session ids that were still open.
  std::vector<std::string> invalidate_enclave(std::string_view enclave_id);

  const Session* find_session(std::string_view session_id) const;
  std::vector<const Session*> sessions() const;
  std::size_t execute_calls() const noexcept { return execute_calls_; }

 private:
  GatewayHost& host_;
  std::map<std::string, Session, std::less<>> sessions_;
  std::size_t execute_calls_ = 0;
};

}  // namespace vaultgate::gateway
