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

#include "hidden_agenda/service/session.hpp"

#include "hidden_agenda/engine.hpp"

namespace hidden_agenda::service {

Session::Session(std::string id, SessionConfig config) : id_(std::move(id)), config_(std::move(config)) {
  config_.validate();
  try {
    state_ = reset(config_.game, config_.seed);
    record_.config = config_.game;
    record_.seed = config_.seed;
    record_.roster = config_.roster;
    record_.seat_agent = assign_agents(state_, config_.roster);
    bots_ = build_policies(state_, config_.roster, record_.seat_agent, config_.seed);
  } catch (const ConfigError& e) {
    throw ProtocolError("invalid_config", e.what());
  } catch (const MapError& e) {
    throw ProtocolError("invalid_config", e.what());
  }
  if (config_.human_seat) bots_[*config_.human_seat].reset();
  for (const auto& p : state_.players) {
    record_.roles.push_back(p.role);
    record_.colors.push_back(p.color);
  }
  record_.returns.assign(state_.num_players(), 0.0);
}

std::vector<int> Session::bot_seats() const {
  std::vector<int> out;
  for (int s = 0; s < static_cast<int>(bots_.size()); ++s) {
    if (bots_[s]) out.push_back(s);
  }
  return out;
}

json Session::frame_for(const Client& c) const {
  return encode_frame(state_, c.seat, c.mode, current_tick(), last_events_, id_);
}

std::vector<Outgoing> Session::join(ClientId client, std::optional<int> seat, FrameMode mode) {
  if (finished()) throw ProtocolError("session_over", "episode already ended");
  if (clients_.count(client)) throw ProtocolError("already_joined", "client already joined this session");
  if (seat) {
    if (*seat < 0 || *seat >= state_.num_players()) {
      throw ProtocolError("seat_unavailable", "no seat " + std::to_string(*seat));
    }
    if (!config_.human_seat || *config_.human_seat != *seat || human_) {
      throw ProtocolError("seat_taken", "seat " + std::to_string(*seat) + " is occupied");
    }
    human_ = client;
  }
  clients_[client] = {seat, mode};
  started_ = true;
  std::vector<Outgoing> out;
  out.push_back({client,
                 {{"v", kProtocolVersion},
                  {"type", "session_created"},
                  {"session", id_},
                  {"seat", seat ? json(*seat) : json("spectator")},
                  {"config", session_config_to_json(config_)}}});
  out.push_back({client, frame_for(clients_[client])});
  return out;
}

void Session::leave(ClientId client) {
  if (human_ && *human_ == client) {
    human_.reset();
    latched_.reset();
  }
  clients_.erase(client);
}

std::vector<Outgoing> Session::submit(ClientId client, int tick, const std::string& action) {
  if (!human_ || *human_ != client) throw ProtocolError("not_seated", "only the seated player may act");
  if (finished()) throw ProtocolError("session_over", "episode already ended");
  if (tick > current_tick()) {
    throw ProtocolError("future_tick", "tick " + std::to_string(tick) + " is ahead of " +
                                           std::to_string(current_tick()));
  }
  if (tick < current_tick()) {
    return {{client, notice_message("stale_action", "tick " + std::to_string(tick) + " already stepped; now at " +
                                                        std::to_string(current_tick()))}};
  }
  try {
    latched_ = PlayerAction::from_name(action, state_.num_players());
  } catch (const std::exception& e) {
    throw ProtocolError("bad_action", e.what());
  }
  return {};
}

std::vector<Outgoing> Session::tick() {
  if (finished()) return {};
  const int n = state_.num_players();
  std::vector<PlayerAction> actions(n);
  for (int s = 0; s < n; ++s) {
    if (bots_[s]) actions[s] = bots_[s]->act(observe(state_, s));
  }
  if (config_.human_seat) actions[*config_.human_seat] = latched_.value_or(PlayerAction::noop());
  latched_.reset();

  StepOutcome step_out = step(state_, actions);
  for (int s = 0; s < n; ++s) record_.returns[s] += step_out.rewards[s];
  record_.actions.push_back(actions);
  record_.events.push_back(step_out.events);
  ++record_.steps;
  last_events_ = std::move(step_out.events);

  std::vector<Outgoing> out;
  for (const auto& [id, c] : clients_) out.push_back({id, frame_for(c)});
  if (state_.terminal) {
    record_.outcome = state_.terminal;
    record_.final_digest = state_digest(state_);
    json roles = json::array();
    for (Role r : record_.roles) roles.push_back(to_string(r));
    const json end{{"v", kProtocolVersion},      {"type", "episode_end"},   {"session", id_},
                   {"tick", current_tick()},     {"outcome", to_string(*state_.terminal)},
                   {"returns", record_.returns}, {"roles", roles}};
    for (const auto& [id, c] : clients_) out.push_back({id, end});
  }
  return out;
}

}  // namespace hidden_agenda::service
