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

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace vaultgate::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDenied = 1,  // refused by policy, failed lint, or a ledger that does not verify
  kUsage = 2,
  kBrokerError = 3,
};

// One request line out, one response line back.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string round_trip(const std::string& line) = 0;
};

// Opens a transport for an endpoint; may throw vaultgate::Error.
using TransportFactory = std::function<std::unique_ptr<Transport>(const std::string& endpoint)>;

// Runs one invocation. `args` excludes the program name. Every path returns
// one of the ExitCode values.
int run(const std::vector<std::string>& args, const TransportFactory& connect, std::ostream& out,
        std::ostream& err);

}  // namespace vaultgate::cli
