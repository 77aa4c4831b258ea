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

// One game hosted for live play: bots plus at most one human seat,
// lockstep ticks with latched human actions. Not thread-safe; the server
// serializes all calls for a session on one strand.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hidden_agenda/service/protocol.hpp"

namespace hidden_agenda::service {

using ClientId = int;

struct Outgoing {
  ClientId client;
  json message;
};

class Session {
 public:
  Session(std::string id, SessionConfig config);

  const std::string& id() const { return id_; }
  const SessionConfig& config() const { return config_; }
  // Seats driven by scripted policies.
  std::vector<int> bot_seats() const;

  // Seat join (the human seat only) or spectator join (empty seat). Replies
  // with session_created and the current frame. Throws ProtocolError
  // ("seat_taken", "seat_unavailable", "session_over").
  std::vector<Outgoing> join(ClientId client, std::optional<int> seat, FrameMode mode);
  void leave(ClientId client);
  bool has_client(ClientId client) const { return clients_.count(client) > 0; }
  int num_clients() const { return static_cast<int>(clients_.size()); }

  // Latches the human's action for `tick`. Last writer wins within a tick;
  // past ticks are discarded with a notice. Throws ProtocolError for
  // spectators, future ticks and unknown actions.
  std::vector<Outgoing> submit(ClientId client, int tick, const std::string& action);

  // Steps the engine once: latched human action (Noop if none) plus bot
  // actions. Emits a frame to every client, and episode_end once on the
  // terminal step. No-op after the end.
  std::vector<Outgoing> tick();

  int current_tick() const { return state_.episode_clock; }
  bool started() const { return started_; }
  bool finished() const { return state_.terminal.has_value(); }
  const WorldState& state() const { return state_; }
  // Everything stepped so far; complete once finished().
  const EpisodeRecord& record() const { return record_; }

 private:
  struct Client {
    std::optional<int> seat;
    FrameMode mode;
  };
  json frame_for(const Client& c) const;

  std::string id_;
  SessionConfig config_;
  WorldState state_;
  EpisodeRecord record_;
  std::vector<std::unique_ptr<Policy>> bots_;  // by seat, null for the human
  std::map<ClientId, Client> clients_;
  std::optional<ClientId> human_;
  std::optional<PlayerAction> latched_;
  std::vector<Event> last_events_;
  bool started_ = false;
};

}  // namespace hidden_agenda::service
