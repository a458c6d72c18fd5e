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

#include "vaultgate/breakglass/break_glass.hpp"

#include <algorithm>

#include "vaultgate/contract/validate.hpp"
#include "vaultgate/core/error.hpp"

namespace vaultgate::breakglass {

std::string_view to_string(RequestStatus status) noexcept {
  switch (status) {
    case RequestStatus::Pending:
      return "Pending";
    case RequestStatus::Activated:
      return "Activated";
    case RequestStatus::Denied:
      return "Denied";
    case RequestStatus::AutoRevoked:
      return "AutoRevoked";
  }
  return "Pending";
}

BreakGlassDesk::BreakGlassDesk(Policy policy, monitor::Monitor& monitor, Hooks& hooks)
    : policy_(std::move(policy)), monitor_(monitor), hooks_(hooks) {
  if (policy_.quorum < 2) throw Error(ErrorCode::BadConfig, "break-glass quorum must be at least 2");
  if (policy_.activation_window <= 0) throw Error(ErrorCode::BadConfig, "activation window must be positive");
}

void BreakGlassDesk::register_account(const std::string& account_id) { accounts_.insert(account_id); }

bool BreakGlassDesk::is_account(std::string_view account_id) const { return accounts_.count(account_id) != 0; }

Json BreakGlassDesk::describe(const Request& r) {
  Json j = {{"request_id", r.request_id},
            {"account", r.account_id},
            {"status", std::string(to_string(r.status))},
            {"approvals", r.approvals},
            {"quorum", r.quorum}};
  if (r.activated_contract_id) j["contract_id"] = *r.activated_contract_id;
  if (r.enclave_id) j["enclave_id"] = *r.enclave_id;
  return j;
}

Request& BreakGlassDesk::get(std::string_view request_id) {
  const auto it = requests_.find(request_id);
  if (it == requests_.end()) {
    throw Error(ErrorCode::UnknownRequest, "no break-glass request '" + std::string(request_id) + "'");
  }
  return it->second;
}

const Request& BreakGlassDesk::request_access(const std::string& account_id,
                                              contract::DataContract contract_template,
                                              std::string justification, const SchemaCatalog& catalog,
                                              std::string request_id, Timestamp now) {
  if (!is_account(account_id)) {
    throw Error(ErrorCode::UnknownAccount, "'" + account_id + "' is not a break-glass account");
  }
  if (contract_template.principal != account_id) {
    throw Error(ErrorCode::ValidationFailed, "template principal '" + contract_template.principal +
                                                 "' must be the requesting account '" + account_id + "'");
  }
  contract_template.status = contract::Status::Draft;
  contract_template.activated_at.reset();
  contract_template.origin = contract::Origin::BreakGlass;
  contract_template.ttl = policy_.activation_window;
  const auto report = contract::validate_contract(contract_template, catalog);
  if (!report.ok()) throw Error(ErrorCode::ValidationFailed, report.summary());

  Request r;
  r.request_id = std::move(request_id);
  r.account_id = account_id;
  r.justification = std::move(justification);
  r.contract_template = std::move(contract_template);
  r.quorum = policy_.quorum;
  r.activation_window = policy_.activation_window;
  r.requested_at = now;
  auto [it, inserted] = requests_.emplace(r.request_id, std::move(r));
  if (!inserted) throw Error(ErrorCode::Internal, "request id collision");

  Json payload = describe(it->second);
  payload["justification"] = it->second.justification;
  payload["template_contract_id"] = it->second.contract_template.contract_id;
  hooks_.audit(audit::Kind::BreakGlassRequested, account_id, std::move(payload), now);
  return it->second;
}

ApproveOutcome BreakGlassDesk::approve(std::string_view request_id, const std::string& approver, Timestamp now) {
  Request& r = get(request_id);
  if (r.status != RequestStatus::Pending) {
    throw Error(ErrorCode::StateError, "request '" + r.request_id + "' is " + std::string(to_string(r.status)));
  }
  if (approver == r.account_id) throw Error(ErrorCode::SelfApproval, "an account cannot approve its own request");
  if (!policy_.approvers.empty() && policy_.approvers.count(approver) == 0) {
    throw Error(ErrorCode::UnauthorizedApprover, "'" + approver + "' may not approve break-glass requests");
  }
  if (std::find(r.approvals.begin(), r.approvals.end(), approver) != r.approvals.end()) {
    throw Error(ErrorCode::DuplicateApproval, "'" + approver + "' already approved '" + r.request_id + "'");
  }

  ApproveOutcome out;
  out.request = &r;
  r.approvals.push_back(approver);
  if (r.approvals.size() < r.quorum) {
    hooks_.audit(audit::Kind::BreakGlassApproved, approver, describe(r), now);
    return out;
  }

  // Quorum reached: activation happens inside this call or not at all.
  Activation act;
  try {
    act = hooks_.activate(r, now);
  } catch (...) {
    r.approvals.pop_back();
    throw;
  }
  r.status = RequestStatus::Activated;
  r.activated_contract_id = act.contract_id;
  r.enclave_id = act.enclave_id;
  r.activated_at = now;
  hooks_.audit(audit::Kind::BreakGlassApproved, approver, describe(r), now);
  monitor::Alert alert = monitor_.raise_break_glass(act.contract_id, act.enclave_id, r.account_id, now);
  hooks_.on_alert(alert);
  Json payload = describe(r);
  payload["alert_id"] = alert.alert_id;
  payload["expires_at"] = now + r.activation_window;
  hooks_.audit(audit::Kind::BreakGlassActivated, r.account_id, std::move(payload), now);
  out.activation = std::move(act);
  out.alert = std::move(alert);
  return out;
}

const Request& BreakGlassDesk::deny(std::string_view request_id, const std::string& actor, Timestamp now) {
  Request& r = get(request_id);
  if (r.status != RequestStatus::Pending) {
    throw Error(ErrorCode::StateError, "request '" + r.request_id + "' is " + std::string(to_string(r.status)));
  }
  r.status = RequestStatus::Denied;
  // A denied request is withdrawn before it ever activated.
  Json payload = describe(r);
  payload["denied_by"] = actor;
  hooks_.audit(audit::Kind::BreakGlassRevoked, actor, std::move(payload), now);
  return r;
}

std::vector<std::string> BreakGlassDesk::sweep(Timestamp now) {
  std::vector<std::string> revoked;
  for (auto& [id, r] : requests_) {
    if (r.status != RequestStatus::Activated) continue;
    if (hooks_.contract_live(*r.activated_contract_id, now)) continue;
    hooks_.deactivate(r, now);
    r.status = RequestStatus::AutoRevoked;
    hooks_.audit(audit::Kind::BreakGlassRevoked, "system", describe(r), now);
    revoked.push_back(id);
  }
  return revoked;
}

const Request* BreakGlassDesk::find(std::string_view request_id) const {
  const auto it = requests_.find(request_id);
  return it == requests_.end() ? nullptr : &it->second;
}

std::vector<const Request*> BreakGlassDesk::requests() const {
  std::vector<const Request*> out;
  for (const auto& [_, r] : requests_) out.push_back(&r);
  return out;
}

bool BreakGlassDesk::has_live_activation(std::string_view account_id, Timestamp now) const {
  for (const auto& [_, r] : requests_) {
    if (r.account_id == account_id && r.status == RequestStatus::Activated &&
        hooks_.contract_live(*r.activated_contract_id, now)) {
      return true;
    }
  }
  return false;
}

}  // namespace vaultgate::breakglass
