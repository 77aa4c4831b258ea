// Copyright 2026 The Hidden Agenda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Websocket + HTTP front end. GET /health returns session counts; any
// websocket upgrade on "/" speaks the session protocol.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace hidden_agenda::service {

struct ServerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 8765;  // 0 picks a free port
  double grace_seconds = 2.0;  // session lifetime after episode_end
  bool stop_on_signals = false;  // SIGINT/SIGTERM end run()
  std::string record_dir;  // when set, finished sessions are saved as session_<id>.json
};

// Reads HA_SERVICE_HOST / HA_SERVICE_PORT over the defaults.
ServerOptions options_from_environment();

class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds immediately; returns the bound port.
  std::uint16_t port() const;
  // Blocks until stop() with `threads` I/O threads.
  void run(int threads = 1);
  void stop();
  int session_count() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace hidden_agenda::service
