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

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hidden_agenda/config.hpp"
#include "hidden_agenda/map.hpp"
#include "hidden_agenda/rng.hpp"
#include "hidden_agenda/types.hpp"

namespace hidden_agenda {

struct PlayerState {
  int id = 0;
  Role role = Role::kCrewmate;
  int color = 0;
  Cell position;
  Direction orientation = Direction::kNorth;
  int inventory = 0;
  Status status = Status::kActive;
  int cooldown_remaining = 0;
  std::optional<Cell> pre_vote_position;
  Direction pre_vote_orientation = Direction::kNorth;

  bool active() const { return status == Status::kActive; }

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

// Cause of the most recent crewmate inactivation; decides which impostor
// win is reported.
enum class Inactivation : std::uint8_t { kNone = 0, kFreeze = 1, kVote = 2 };

struct WorldState {
  GameConfig config;
  std::shared_ptr<const GameMap> map;
  std::vector<PlayerState> players;
  // Steps until each pad (same order as map->fuel_pads()) holds fuel again;
  // 0 means occupied.
  std::vector<int> pad_respawn;
  Phase phase = Phase::kSituation;
  int situation_clock = 0;
  int voting_clock = 0;
  int episode_clock = 0;
  int progress = 0;
  int voting_rounds = 0;
  std::vector<Vote> vote_ledger;
  CounterRng rng;
  std::optional<WinCondition> terminal;
  Inactivation last_crew_inactivation = Inactivation::kNone;
  // Player index per map cell, -1 when empty.
  std::vector<std::int8_t> occupancy;
  // Footprint of a beam fired during the latest step (rendered as an overlay).
  std::vector<Cell> beam_cells;
  int beam_shooter = -1;

  int num_players() const { return static_cast<int>(players.size()); }
  int occupant(Cell c) const { return map->in_bounds(c) ? occupancy[map->index(c)] : -1; }
  int active_crewmates() const;
  int active_players() const;

  friend bool operator==(const WorldState& a, const WorldState& b);
};

// 64-bit FNV-1a digest over every field of the state, in a fixed order.
std::uint64_t state_digest(const WorldState& state);

}  // namespace hidden_agenda
