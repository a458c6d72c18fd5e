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


// vaultgated: the broker daemon. Serves NDJSON on a Unix socket, or on
// stdin/stdout with --stdio.

#include <CLI11.hpp>
#include <signal.h>

#include <iostream>
#include <thread>

#include "vaultgate/broker/broker.hpp"
#include "vaultgate/broker/server.hpp"
#include "vaultgate/core/error.hpp"

namespace vb = vaultgate::broker;

int main(int argc, char** argv) {
  CLI::App app{"vaultgate broker daemon", "vaultgated"};
  std::string config_path, endpoint, data_dir, clock;
  std::vector<std::string> tables;
  bool use_stdio = false;
  bool no_fsync = false;
  app.add_option("--config", config_path, "Broker config (JSON)");
  app.add_option("--endpoint", endpoint, "Unix socket path; overrides the config");
  app.add_option("--data-dir", data_dir, "Persistence directory; overrides the config");
  app.add_option("--table", tables, "NAME=CSV table to load (repeatable)");
  app.add_option("--clock", clock, "logical or wall")->check(CLI::IsMember({"logical", "wall"}));
  app.add_flag("--stdio", use_stdio, "Serve stdin/stdout instead of a socket");
  app.add_flag("--no-fsync", no_fsync, "Skip fsync on ledger appends");
  CLI11_PARSE(app, argc, argv);

  try {
    vb::BrokerConfig config;
    if (!config_path.empty()) config = vb::BrokerConfig::load(config_path);
    if (!endpoint.empty()) config.endpoint = endpoint;
    if (!data_dir.empty()) config.data_dir = data_dir;
    if (!clock.empty()) config.clock = clock == "wall" ? vb::ClockMode::Wall : vb::ClockMode::Logical;
    if (no_fsync) config.fsync = false;
    for (const auto& entry : tables) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw vaultgate::Error(vaultgate::ErrorCode::BadConfig, "--table expects NAME=CSV");
      }
      config.tables.push_back({entry.substr(0, eq), entry.substr(eq + 1)});
    }
    if (!use_stdio && config.endpoint.empty()) {
      throw vaultgate::Error(vaultgate::ErrorCode::BadConfig, "no endpoint; pass --endpoint or --stdio");
    }

    // Signals are taken synchronously by a watcher thread.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    if (!use_stdio) pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    vb::Broker broker(config);
    if (use_stdio) {
      vb::serve_stream(broker, std::cin, std::cout);
      return 0;
    }
    vb::UnixServer server(broker, config.endpoint);
    std::thread watcher([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      server.stop();
    });
    std::cerr << "vaultgated: listening on " << config.endpoint << '\n';
    server.run();
    // Wake the watcher if the accept loop ended for another reason.
    pthread_kill(watcher.native_handle(), SIGTERM);
    watcher.join();
    return 0;
  } catch (const vaultgate::Error& e) {
    std::cerr << "vaultgated: " << vaultgate::to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "vaultgated: " << e.what() << '\n';
    return 1;
  }
}
