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

#include "CLI11.hpp"
#include <iostream>

#include "hidden_agenda/service/server.hpp"

int main(int argc, char** argv) {
  using namespace hidden_agenda::service;
  ServerOptions options;
  try {
    options = options_from_environment();
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  int threads = 1;
  CLI::App app{"Hidden Agenda session server"};
  app.add_option("--host", options.host, "listen address (env HA_SERVICE_HOST)")->capture_default_str();
  app.add_option("--port", options.port, "listen port, 0 for any (env HA_SERVICE_PORT)")->capture_default_str();
  app.add_option("--grace", options.grace_seconds, "seconds a finished session stays open")->capture_default_str();
  app.add_option("--record-dir", options.record_dir, "save finished sessions as replays here");
  app.add_option("--threads", threads, "I/O threads")->check(CLI::PositiveNumber)->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  options.stop_on_signals = true;

  try {
    Server server(options);
    std::cout << "listening on " << options.host << ":" << server.port() << std::endl;
    server.run(threads);
  } catch (const std::exception& e) {
    std::cerr << "server error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
