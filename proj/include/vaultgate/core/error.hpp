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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vaultgate {

// Union of every module's error names. The wire protocol reports these
// verbatim as error.code.
enum class ErrorCode {
  ParseError,
  StateError,
  ValidationFailed,
  UnknownSource,
  UnknownColumn,
  TypeMismatch,
  DuplicateTable,
  DuplicateContract,
  BadContractId,
  ContractNotLive,
  ContractExpired,
  ManTrapViolation,
  EnclaveNotServing,
  BadToken,
  SessionDead,
  BadConfig,
  StorageFailure,
  UnknownAccount,
  UnauthorizedApprover,
  SelfApproval,
  DuplicateApproval,
  StandingPrivilege,
  UnknownContract,
  UnknownEnclave,
  UnknownSession,
  UnknownRequest,
  ClockNotLogical,
  UnknownOp,
  BadRequest,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Grammar violation in the contract DSL or the query language. line/column
// are 1-based; offset is the 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::size_t offset,
             std::string expected, std::string found);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::size_t offset_;
  std::string expected_;
  std::string found_;
};

}  // namespace vaultgate
