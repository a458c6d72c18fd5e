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

#include "vaultgate/gateway/gateway.hpp"

#include <algorithm>
#include <set>

#include "vaultgate/store/table_store.hpp"

namespace vaultgate::gateway {

std::string_view to_string(Verdict verdict) noexcept {
  return verdict == Verdict::Allow ? "Allow" : "Deny";
}

std::string_view to_string(DenyCode code) noexcept {
  switch (code) {
    case DenyCode::UnknownTable:
      return "UnknownTable";
    case DenyCode::ColumnOutOfScope:
      return "ColumnOutOfScope";
    case DenyCode::StatementForbidden:
      return "StatementForbidden";
    case DenyCode::SessionDead:
      return "SessionDead";
    case DenyCode::ContractExpired:
      return "ContractExpired";
    case DenyCode::RowLimitExceeded:
      return "RowLimitExceeded";
  }
  return "UnknownTable";
}

std::optional<DenyCode> parse_deny_code(std::string_view text) noexcept {
  for (auto code : {DenyCode::UnknownTable, DenyCode::ColumnOutOfScope, DenyCode::StatementForbidden,
                    DenyCode::SessionDead, DenyCode::ContractExpired, DenyCode::RowLimitExceeded}) {
    if (to_string(code) == text) return code;
  }
  return std::nullopt;
}

Decision authorize(const QueryAst& ast, const contract::DataContract& c, const SchemaCatalog& catalog,
                   const Session& session, enclave::State enclave_state, Timestamp now) {
  if (ast.kind == StatementKind::CopyInto) {
    return Decision::deny(DenyCode::StatementForbidden, "COPY INTO is never permitted");
  }
  // A TTL that ran out is reported as such even though the sweep that noticed
  // it has also killed the session.
  const bool timed_out = c.status == contract::Status::Expired ||
                         (c.status == contract::Status::Active && c.activated_at && now >= *c.activated_at + c.ttl);
  if (timed_out) return Decision::deny(DenyCode::ContractExpired, "contract " + c.contract_id + " has expired");
  if (session.closed || enclave_state != enclave::State::Serving) {
    return Decision::deny(DenyCode::SessionDead, "session " + session.session_id + " is not usable");
  }
  if (!contract::is_live(c, now)) {
    return Decision::deny(DenyCode::ContractExpired, "contract " + c.contract_id + " is not live");
  }
  if (ast.kind == StatementKind::ShowTables) return Decision::allow();

  const contract::Grant* grant = nullptr;
  for (const auto& g : c.grants) {
    if (g.table_name() == ast.table) {
      grant = &g;
      break;
    }
  }
  if (grant == nullptr) return Decision::deny(DenyCode::UnknownTable, "no granted table '" + ast.table + "'");

  std::set<std::string, std::less<>> allowed;
  if (grant->all_columns()) {
    const TableSchema* schema = catalog.find(grant->source);
    if (schema == nullptr) return Decision::deny(DenyCode::UnknownTable, "source " + grant->source + " unknown");
    for (const auto& col : schema->columns) allowed.insert(col.name);
  } else {
    const auto& cols = std::get<std::vector<std::string>>(grant->columns);
    allowed.insert(cols.begin(), cols.end());
  }
  auto out_of_scope = [&](const std::string& col) {
    return Decision::deny(DenyCode::ColumnOutOfScope, "column '" + col + "' is outside the grant");
  };
  if (ast.columns) {
    for (const auto& col : *ast.columns) {
      if (allowed.count(col) == 0) return out_of_scope(col);
    }
  }
  if (ast.where) {
    for (const auto& cmp : ast.where->conjuncts) {
      if (allowed.count(cmp.column) == 0) return out_of_scope(cmp.column);
    }
  }
  return Decision::allow();
}

QueryResult evaluate(const QueryAst& ast, const enclave::Enclave& e) {
  QueryResult result;
  if (ast.kind == StatementKind::ShowTables) {
    result.columns = {"table"};
    for (auto& name : e.table_names()) result.rows.push_back({Value{std::move(name)}});
    return result;
  }
  if (ast.kind != StatementKind::Select) {
    throw Error(ErrorCode::Internal, "evaluate: only SELECT and SHOW TABLES execute");
  }
  const auto grant_idx = e.grant_for_table(ast.table);
  const auto seg_it = grant_idx ? e.segments().find(*grant_idx) : e.segments().end();
  if (seg_it == e.segments().end()) {
    throw Error(ErrorCode::Internal, "evaluate: no segment for table '" + ast.table + "'");
  }
  const store::Segment& seg = seg_it->second;

  std::vector<std::size_t> projection;
  if (ast.star()) {
    for (std::size_t i = 0; i < seg.columns.size(); ++i) projection.push_back(i);
  } else {
    for (const auto& col : *ast.columns) {
      auto it = std::find_if(seg.columns.begin(), seg.columns.end(),
                             [&](const ColumnDef& d) { return d.name == col; });
      if (it == seg.columns.end()) throw Error(ErrorCode::UnknownColumn, "column '" + col + "' not materialized");
      projection.push_back(static_cast<std::size_t>(it - seg.columns.begin()));
    }
  }
  for (std::size_t idx : projection) result.columns.push_back(seg.columns[idx].name);

  std::optional<store::CompiledPredicate> filter;
  if (ast.where) filter.emplace(*ast.where, seg.columns);

  std::optional<std::int64_t> cap = ast.limit;
  if (const auto& row_limit = e.grants()[*grant_idx].row_limit) {
    cap = cap ? std::min(*cap, *row_limit) : *row_limit;
  }

  for (const auto& row : seg.rows) {
    if (filter && !(*filter)(row)) continue;
    if (cap && static_cast<std::int64_t>(result.rows.size()) == *cap) {
      result.truncated = true;
      break;
    }
    std::vector<Value> out;
    out.reserve(projection.size());
    for (std::size_t idx : projection) out.push_back(row[idx]);
    result.rows.push_back(std::move(out));
  }
  return result;
}

const Session& Gateway::open_session(std::string_view enclave_id, std::string_view token, Timestamp now) {
  const enclave::Enclave* e = host_.find_enclave(enclave_id);
  if (e == nullptr) throw Error(ErrorCode::UnknownEnclave, "no enclave '" + std::string(enclave_id) + "'");
  const contract::DataContract* c = host_.find_contract(e->contract_id());
  if (c == nullptr || !host_.token_matches(*c, token)) {
    throw Error(ErrorCode::BadToken, "token not valid for enclave '" + std::string(enclave_id) + "'");
  }
  if (e->state() != enclave::State::Serving) {
    throw Error(ErrorCode::EnclaveNotServing, "enclave '" + std::string(enclave_id) + "' is " +
                                                  std::string(enclave::to_string(e->state())));
  }
  if (!contract::is_live(*c, now)) {
    throw Error(ErrorCode::ContractExpired, "contract '" + c->contract_id + "' is not live");
  }
  Session s;
  s.session_id = host_.next_id("ses");
  s.enclave_id = e->id();
  s.contract_id = c->contract_id;
  s.principal = c->principal;
  s.opened_at = now;
  auto [it, inserted] = sessions_.emplace(s.session_id, std::move(s));
  if (!inserted) throw Error(ErrorCode::Internal, "session id collision");
  host_.on_session_opened(it->second);
  return it->second;
}

ExecuteOutcome Gateway::execute(std::string_view session_id, std::string_view text, Timestamp now) {
  ++execute_calls_;
  QueryEvent ev;
  ev.session_id = std::string(session_id);
  ev.statement = std::string(text);
  ev.at = now;

  const Session* session = find_session(session_id);
  const enclave::Enclave* e = session ? host_.find_enclave(session->enclave_id) : nullptr;
  const contract::DataContract* c = session ? host_.find_contract(session->contract_id) : nullptr;
  if (session != nullptr) {
    ev.enclave_id = session->enclave_id;
    ev.contract_id = session->contract_id;
    ev.principal = session->principal;
  }

  QueryAst ast;
  try {
    ast = parse_query(text);
  } catch (const ParseError& err) {
    ev.decision = Decision{Verdict::Deny, std::nullopt, err.what()};
    ev.error = ErrorCode::ParseError;
    host_.on_query(ev);
    throw;
  }
  ev.kind = ast.kind;
  ev.star = ast.star();

  if (session == nullptr || e == nullptr || c == nullptr) {
    ev.decision = ast.kind == StatementKind::CopyInto
                      ? Decision::deny(DenyCode::StatementForbidden, "COPY INTO is never permitted")
                      : Decision::deny(DenyCode::SessionDead, "unknown session '" + ev.session_id + "'");
  } else {
    ev.decision = authorize(ast, *c, host_.catalog(), *session, e->state(), now);
  }
  if (!ev.decision.allowed()) {
    host_.on_query(ev);
    return {ev.decision, std::nullopt};
  }

  QueryResult result;
  try {
    result = evaluate(ast, *e);
  } catch (const Error& err) {
    ev.decision = Decision{Verdict::Deny, std::nullopt, err.what()};
    ev.error = err.code();
    host_.on_query(ev);
    throw;
  }
  ev.rows_returned = result.rows.size();
  host_.on_query(ev);
  return {ev.decision, std::move(result)};
}

void Gateway::close_session(std::string_view session_id, Timestamp now) {
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session '" + std::string(session_id) + "'");
  if (it->second.closed) throw Error(ErrorCode::SessionDead, "session '" + std::string(session_id) + "' is closed");
  it->second.closed = true;
  host_.on_session_closed(it->second, now);
}

std::vector<std::string> Gateway::invalidate_enclave(std::string_view enclave_id) {
  std::vector<std::string> killed;
  for (auto& [id, s] : sessions_) {
    if (s.enclave_id == enclave_id && !s.closed) {
      s.closed = true;
      killed.push_back(id);
    }
  }
  return killed;
}

const Session* Gateway::find_session(std::string_view session_id) const {
  const auto it = sessions_.find(session_id);
  return it == sessions_.end() ? nullptr : &it->second;
}

std::vector<const Session*> Gateway::sessions() const {
  std::vector<const Session*> out;
  for (const auto& [_, s] : sessions_) out.push_back(&s);
  return out;
}

}  // namespace vaultgate::gateway
