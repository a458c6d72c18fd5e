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

#include <atomic>
#include <iosfwd>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "vaultgate/broker/broker.hpp"

namespace vaultgate::broker {

// Reads requests line by line until EOF, writing one response line each.
// Blank lines are skipped.
void serve_stream(Broker& broker, std::istream& in, std::ostream& out);

// NDJSON over a Unix stream socket, one thread per connection. A separate
// gateway process would attach here, forwarding only the session and query
// ops.
class UnixServer {
 public:
  // Binds and listens. A stale socket file at `path` is replaced; any other
  // existing file is an error. Throws Error{BadConfig}.
  UnixServer(Broker& broker, std::string path);
  ~UnixServer();

  UnixServer(const UnixServer&) = delete;
  UnixServer& operator=(const UnixServer&) = delete;

  // Accepts until stop() is called.
  void run();
  // Safe from any thread or a signal-driven watcher.
  void stop();

  const std::string& path() const noexcept { return path_; }

 private:
  void serve_connection(int fd);

  Broker& broker_;
  std::string path_;
  int listen_fd_ = -1;
  std::atomic<bool> stopping_{false};
  std::mutex mu_;
  std::vector<std::thread> workers_;
  std::vector<int> client_fds_;
};

// Blocking client for one connection.
class UnixClient {
 public:
  // Throws Error{StorageFailure} if the endpoint cannot be reached.
  explicit UnixClient(const std::string& path);
  ~UnixClient();

  UnixClient(const UnixClient&) = delete;
  UnixClient& operator=(const UnixClient&) = delete;

  // Sends one line, returns the response line without its terminator.
  std::string round_trip(const std::string& line);

 private:
  int fd_ = -1;
  std::string buffer_;
};

}  // namespace vaultgate::broker
