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


// vaultgate: operator command line. Talks NDJSON to a running vaultgated.

#include <iostream>
#include <memory>

#include "vaultgate/broker/server.hpp"
#include "vaultgate/cli/cli.hpp"

namespace {

class SocketTransport : public vaultgate::cli::Transport {
 public:
  explicit SocketTransport(const std::string& path) : client_(path) {}
  std::string round_trip(const std::string& line) override { return client_.round_trip(line); }

 private:
  vaultgate::broker::UnixClient client_;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const vaultgate::cli::TransportFactory connect = [](const std::string& endpoint) {
    return std::make_unique<SocketTransport>(endpoint);
  };
  return vaultgate::cli::run(args, connect, std::cout, std::cerr);
}
