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

#include "hidden_agenda/engine.hpp"

#include <numeric>
#include <string>

#include "hidden_agenda/rules.hpp"

namespace hidden_agenda {

WorldState reset(const GameConfig& config, std::uint64_t seed) {
  config.validate();
  auto map = resolve_map(config.map_name);
  map->validate_for(config.num_players);

  WorldState state;
  state.config = config;
  state.map = std::move(map);
  state.rng = CounterRng(seed);
  const int n = config.num_players;

  std::vector<int> seats(n);
  std::iota(seats.begin(), seats.end(), 0);
  state.rng.shuffle(std::span<int>(seats));
  std::vector<int> colors(n);
  std::iota(colors.begin(), colors.end(), 0);
  state.rng.shuffle(std::span<int>(colors));

  state.occupancy.assign(static_cast<std::size_t>(state.map->width()) * state.map->height(), -1);
  state.players.resize(n);
  for (int i = 0; i < n; ++i) {
    auto& p = state.players[i];
    p.id = i;
    p.color = colors[i];
    p.position = state.map->spawn_points()[i];
    state.occupancy[state.map->index(p.position)] = static_cast<std::int8_t>(i);
  }
  for (int k = 0; k < config.num_impostors; ++k) state.players[seats[k]].role = Role::kImpostor;

  state.pad_respawn.assign(state.map->fuel_pads().size(), 0);
  state.vote_ledger.assign(n, Vote::abstain());
  return state;
}

StepOutcome step(WorldState& state, std::span<const PlayerAction> actions) {
  if (state.terminal) throw EngineError("step() called on a terminal state");
  if (static_cast<int>(actions.size()) != state.num_players()) {
    throw EngineError("step() expects " + std::to_string(state.num_players()) + " actions, got " +
                      std::to_string(actions.size()));
  }

  StepOutcome out;
  out.rewards.assign(state.num_players(), 0.0);
  state.beam_cells.clear();
  state.beam_shooter = -1;
  ++state.episode_clock;

  if (state.phase == Phase::kSituation) {
    ++state.situation_clock;
    rules::resolve_moves(state, actions);
    rules::resolve_fuel(state, out);
    const auto beams = rules::resolve_fire(state, actions, out);
    state.terminal = rules::check_win(state);
    if (!state.terminal) {
      bool witnessed = false;
      for (const auto& beam : beams) witnessed = witnessed || rules::check_witness(state, beam).triggered;
      if (witnessed) {
        rules::begin_voting(state, VotingTrigger::kWitness, out);
      } else if (state.situation_clock >= state.config.situation_phase_length) {
        rules::begin_voting(state, VotingTrigger::kTimer, out);
      }
    }
  } else {
    rules::resolve_voting_step(state, actions, out);
    if (!state.terminal) state.terminal = rules::check_win(state);
  }

  if (state.terminal) {
    std::vector<Role> roles;
    roles.reserve(state.players.size());
    for (const auto& p : state.players) roles.push_back(p.role);
    const auto payout = rules::terminal_rewards(*state.terminal, roles, state.config);
    for (std::size_t i = 0; i < payout.size(); ++i) out.rewards[i] += payout[i];
  }
  out.terminal = state.terminal;
  return out;
}

}  // namespace hidden_agenda
