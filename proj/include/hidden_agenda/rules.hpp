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

// Individual rule stages. step() composes them; they are public so each
// can be exercised in isolation.

#include <optional>
#include <span>
#include <vector>

#include "hidden_agenda/world.hpp"

namespace hidden_agenda::rules {

// Turns first, then moves in an RNG permutation; one player per cell.
void resolve_moves(WorldState& state, std::span<const PlayerAction> actions);

// Pad respawn countdown, pickups, deposits.
void resolve_fuel(WorldState& state, StepOutcome& out);

// Cells hit by a beam fired from `position` facing `facing`. Forward
// offsets 1..forward_span, lateral offsets -lateral_span..lateral_span;
// walls stop a column. With `flank_own_row`, the lateral cells beside the
// shooter are included too.
std::vector<Cell> beam_footprint(Cell position, Direction facing, const GameMap& map,
                                 int forward_span = 2, int lateral_span = 1,
                                 bool flank_own_row = false);
std::vector<Cell> beam_footprint(Cell position, Direction facing, const GameMap& map,
                                 const GameConfig& config);

// Cooldown countdown and impostor fire. Returns the beams fired this step.
std::vector<event::FireBeam> resolve_fire(WorldState& state, std::span<const PlayerAction> actions,
                                          StepOutcome& out);

struct WitnessResult {
  bool triggered = false;
  std::vector<int> witnesses;
};

// Active crewmates outside the footprint that see the shooter's cell or any
// footprint cell.
WitnessResult check_witness(const WorldState& state, const event::FireBeam& fire);

void begin_voting(WorldState& state, VotingTrigger trigger, StepOutcome& out);

// Applies vote actions, advances the voting clock and tallies on the last
// step (calling end_voting).
void resolve_voting_step(WorldState& state, std::span<const PlayerAction> actions, StepOutcome& out);

// Unique player with the most votes among those reaching ceil(A/2), where A
// counts active voters (abstentions included). nullopt on ties or no
// candidate.
std::optional<int> tally_votes(std::span<const Vote> ledger, std::span<const Status> statuses);

void end_voting(WorldState& state, std::optional<int> jailed, StepOutcome& out);

// Priority: task, vote outcomes, freeze, timeout.
std::optional<WinCondition> check_win(const WorldState& state);

std::vector<double> terminal_rewards(WinCondition win, std::span<const Role> roles,
                                     const GameConfig& config);

}  // namespace hidden_agenda::rules
