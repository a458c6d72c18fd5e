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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/audit/ledger.hpp"
#include "vaultgate/contract/contract.hpp"
#include "vaultgate/core/catalog.hpp"
#include "vaultgate/monitor/monitor.hpp"

namespace vaultgate::breakglass {

enum class RequestStatus { Pending, Activated, Denied, AutoRevoked };

std::string_view to_string(RequestStatus status) noexcept;

struct Request {
  std::string request_id;
  std::string account_id;
  std::string justification;
  contract::DataContract contract_template;  // Draft, origin BreakGlass, ttl = window
  std::vector<std::string> approvals;        // distinct, in approval order
  std::size_t quorum = 2;
  RequestStatus status = RequestStatus::Pending;
  std::int64_t activation_window = 900;
  Timestamp requested_at = 0;
  std::optional<std::string> activated_contract_id;
  std::optional<std::string> enclave_id;
  std::optional<Timestamp> activated_at;
};

struct Policy {
  std::size_t quorum = 2;
  std::int64_t activation_window = 900;  // seconds
  // Identities allowed to approve. Empty means any identity other than the
  // requesting account.
  std::set<std::string, std::less<>> approvers;
};

// Result of composing a live grant for an approved request.
struct Activation {
  std::string contract_id;
  std::string enclave_id;
  std::string token;
};

// Supplied by the broker: the pieces of the activation that live in other
// modules, plus the audit sink.
class Hooks {
 public:
  virtual ~Hooks() = default;

  // Activates a contract from the template and brokers a Serving enclave for
  // it. Throws on failure, in which case nothing was activated.
  virtual Activation activate(const Request& request, Timestamp now) = 0;
  virtual bool contract_live(std::string_view contract_id, Timestamp now) const = 0;
  // Expires the request's enclaves (cause BreakGlassAuto) and its contract.
  virtual void deactivate(const Request& request, Timestamp now) = 0;
  virtual void audit(audit::Kind kind, const std::string& actor, Json payload, Timestamp now) = 0;
  virtual void on_alert(const monitor::Alert& alert) = 0;
};

struct ApproveOutcome {
  const Request* request = nullptr;
  std::optional<Activation> activation;  // set when this approval reached quorum
  std::optional<monitor::Alert> alert;
};

// Emergency access desk. Break-glass accounts hold nothing until a request
// collects `quorum` distinct approvals from identities other than the
// requester; the approval that reaches quorum activates a short-lived grant
// in the same step and raises a Critical alert. sweep() revokes grants whose
// window has elapsed.
class BreakGlassDesk {
 public:
  BreakGlassDesk(Policy policy, monitor::Monitor& monitor, Hooks& hooks);

  void register_account(const std::string& account_id);
  bool is_account(std::string_view account_id) const;
  const Policy& policy() const noexcept { return policy_; }

  // Throws Error{UnknownAccount} or Error{ValidationFailed}.
  const Request& request_access(const std::string& account_id, contract::DataContract contract_template,
                                std::string justification, const SchemaCatalog& catalog,
                                std::string request_id, Timestamp now);

  // Throws Error{UnknownRequest, StateError, SelfApproval,
  // UnauthorizedApprover, DuplicateApproval}.
  ApproveOutcome approve(std::string_view request_id, const std::string& approver, Timestamp now);

  // Pending -> Denied (terminal).
  const Request& deny(std::string_view request_id, const std::string& actor, Timestamp now);

  // Activated requests whose contract is no longer live -> AutoRevoked.
  // Returns the affected request ids.
  std::vector<std::string> sweep(Timestamp now);

  const Request* find(std::string_view request_id) const;
  std::vector<const Request*> requests() const;
  // True iff some Activated request of `account_id` still has a live contract.
  bool has_live_activation(std::string_view account_id, Timestamp now) const;

 private:
  Request& get(std::string_view request_id);
  static Json describe(const Request& request);

  Policy policy_;
  monitor::Monitor& monitor_;
  Hooks& hooks_;
  std::set<std::string, std::less<>> accounts_;
  std::map<std::string, Request, std::less<>> requests_;
};

}  // namespace vaultgate::breakglass
