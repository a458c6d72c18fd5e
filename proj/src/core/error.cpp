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

#include "vaultgate/core/error.hpp"

#include <array>
#include <utility>

namespace vaultgate {

namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 30> kNames{{
    {ErrorCode::ParseError, "ParseError"},
    {ErrorCode::StateError, "StateError"},
    {ErrorCode::ValidationFailed, "ValidationFailed"},
    {ErrorCode::UnknownSource, "UnknownSource"},
    {ErrorCode::UnknownColumn, "UnknownColumn"},
    {ErrorCode::TypeMismatch, "TypeMismatch"},
    {ErrorCode::DuplicateTable, "DuplicateTable"},
    {ErrorCode::DuplicateContract, "DuplicateContract"},
    {ErrorCode::BadContractId, "BadContractId"},
    {ErrorCode::ContractNotLive, "ContractNotLive"},
    {ErrorCode::ContractExpired, "ContractExpired"},
    {ErrorCode::ManTrapViolation, "ManTrapViolation"},
    {ErrorCode::EnclaveNotServing, "EnclaveNotServing"},
    {ErrorCode::BadToken, "BadToken"},
    {ErrorCode::SessionDead, "SessionDead"},
    {ErrorCode::BadConfig, "BadConfig"},
    {ErrorCode::StorageFailure, "StorageFailure"},
    {ErrorCode::UnknownAccount, "UnknownAccount"},
    {ErrorCode::UnauthorizedApprover, "UnauthorizedApprover"},
    {ErrorCode::SelfApproval, "SelfApproval"},
    {ErrorCode::DuplicateApproval, "DuplicateApproval"},
    {ErrorCode::StandingPrivilege, "StandingPrivilege"},
    {ErrorCode::UnknownContract, "UnknownContract"},
    {ErrorCode::UnknownEnclave, "UnknownEnclave"},
    {ErrorCode::UnknownSession, "UnknownSession"},
    {ErrorCode::UnknownRequest, "UnknownRequest"},
    {ErrorCode::ClockNotLogical, "ClockNotLogical"},
    {ErrorCode::UnknownOp, "UnknownOp"},
    {ErrorCode::BadRequest, "BadRequest"},
    {ErrorCode::Internal, "Internal"},
}};

std::string describe(std::size_t line, std::size_t column,
                     const std::string& expected, const std::string& found) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column) +
         ": expected " + expected + ", found " + found;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Internal";
}

std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

ParseError::ParseError(std::size_t line, std::size_t column, std::size_t offset,
                       std::string expected, std::string found)
    : Error(ErrorCode::ParseError, describe(line, column, expected, found)),
      line_(line),
      column_(column),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

}  // namespace vaultgate
