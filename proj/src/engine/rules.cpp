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

#include "hidden_agenda/rules.hpp"

#include <algorithm>
#include <numeric>

#include "hidden_agenda/view_window.hpp"

namespace hidden_agenda::rules {
namespace {

void place(WorldState& state, PlayerState& p, Cell to) {
  state.occupancy[state.map->index(p.position)] = -1;
  p.position = to;
  state.occupancy[state.map->index(to)] = static_cast<std::int8_t>(p.id);
}

int pad_index(const GameMap& map, Cell c) {
  const auto& pads = map.fuel_pads();
  const auto it = std::find(pads.begin(), pads.end(), c);
  return it == pads.end() ? -1 : static_cast<int>(it - pads.begin());
}

}  // namespace

void resolve_moves(WorldState& state, std::span<const PlayerAction> actions) {
  for (auto& p : state.players) {
    if (!p.active()) continue;
    const PlayerAction& a = actions[p.id];
    if (a.kind == ActionKind::kTurnLeft) p.orientation = turn_left(p.orientation);
    if (a.kind == ActionKind::kTurnRight) p.orientation = turn_right(p.orientation);
  }

  // One permutation per situation step, drawn whether or not anyone moves,
  // so the RNG stream does not depend on the chosen actions.
  std::vector<int> order(state.players.size());
  std::iota(order.begin(), order.end(), 0);
  state.rng.shuffle(std::span<int>(order));

  for (int i : order) {
    auto& p = state.players[i];
    const PlayerAction& a = actions[i];
    if (!p.active() || !a.is_move()) continue;
    const Cell target = p.position + forward_vector(a.move_direction());
    if (!state.map->walkable(target) || state.occupant(target) != -1) continue;
    place(state, p, target);
  }
}

void resolve_fuel(WorldState& state, StepOutcome& out) {
  const GameConfig& cfg = state.config;
  for (int& r : state.pad_respawn) {
    if (r > 0) --r;
  }
  for (auto& p : state.players) {
    if (!p.active() || p.role != Role::kCrewmate) continue;
    const CellKind kind = state.map->at(p.position);
    if (kind == CellKind::kFuelPad) {
      const int pad = pad_index(*state.map, p.position);
      if (state.pad_respawn[pad] == 0 && p.inventory < cfg.inventory_capacity) {
        ++p.inventory;
        state.pad_respawn[pad] = cfg.fuel_respawn_delay;
        out.rewards[p.id] += cfg.reward_pickup;
        out.events.emplace_back(event::Pickup{p.id});
      }
    } else if (kind == CellKind::kGrate && p.inventory > 0) {
      // Never deposit past the goal; leftover cells stay in the inventory.
      const int count = std::min(p.inventory, cfg.fuel_goal - state.progress);
      if (count <= 0) continue;
      p.inventory -= count;
      state.progress += count;
      out.rewards[p.id] += cfg.reward_deposit * count;
      out.events.emplace_back(event::Deposit{p.id, count});
    }
  }
}

std::vector<Cell> beam_footprint(Cell position, Direction facing, const GameMap& map,
                                 int forward_span, int lateral_span, bool flank_own_row) {
  const Cell f = forward_vector(facing);
  const Cell r = right_vector(facing);
  std::vector<Cell> cells;
  if (flank_own_row) {
    for (int side = -lateral_span; side <= lateral_span; ++side) {
      if (side == 0) continue;
      const Cell c{position.x + r.x * side, position.y + r.y * side};
      if (!map.is_wall(c)) cells.push_back(c);
    }
  }
  // Depth each lateral column reaches before a wall stops it.
  std::vector<int> reach(2 * lateral_span + 1, forward_span);
  for (int side = -lateral_span; side <= lateral_span; ++side) {
    for (int ahead = 1; ahead <= forward_span; ++ahead) {
      const Cell c{position.x + f.x * ahead + r.x * side, position.y + f.y * ahead + r.y * side};
      if (map.is_wall(c)) {
        reach[side + lateral_span] = ahead - 1;
        break;
      }
    }
  }
  for (int ahead = 1; ahead <= forward_span; ++ahead) {
    for (int side = -lateral_span; side <= lateral_span; ++side) {
      if (ahead > reach[side + lateral_span]) continue;
      cells.push_back({position.x + f.x * ahead + r.x * side, position.y + f.y * ahead + r.y * side});
    }
  }
  return cells;
}

std::vector<Cell> beam_footprint(Cell position, Direction facing, const GameMap& map,
                                 const GameConfig& config) {
  return beam_footprint(position, facing, map, config.beam_forward_span, config.beam_lateral_span,
                        config.beam_flanks_own_row);
}

std::vector<event::FireBeam> resolve_fire(WorldState& state, std::span<const PlayerAction> actions,
                                          StepOutcome& out) {
  const GameConfig& cfg = state.config;
  std::vector<event::FireBeam> fired;
  for (auto& p : state.players) {
    if (p.role != Role::kImpostor) continue;
    if (p.cooldown_remaining > 0) --p.cooldown_remaining;
    if (!p.active() || actions[p.id].kind != ActionKind::kFire || p.cooldown_remaining > 0) {
      continue;
    }
    event::FireBeam beam{p.id, beam_footprint(p.position, p.orientation, *state.map, cfg)};
    out.events.emplace_back(beam);
    state.beam_cells.insert(state.beam_cells.end(), beam.cells.begin(), beam.cells.end());
    state.beam_shooter = p.id;
    for (Cell c : beam.cells) {
      const int q = state.occupant(c);
      if (q < 0) continue;
      auto& victim = state.players[q];
      if (!victim.active() || victim.role != Role::kCrewmate) continue;
      victim.status = Status::kFrozen;
      state.vote_ledger[q] = Vote::inactive();
      state.last_crew_inactivation = Inactivation::kFreeze;
      out.rewards[p.id] += cfg.reward_freeze;
      out.rewards[q] += cfg.reward_frozen;
      out.events.emplace_back(event::Frozen{q, p.id});
    }
    p.cooldown_remaining = cfg.freeze_cooldown;
    fired.push_back(std::move(beam));
  }
  return fired;
}

WitnessResult check_witness(const WorldState& state, const event::FireBeam& fire) {
  WitnessResult result;
  const Cell shooter = state.players[fire.player].position;
  for (const auto& q : state.players) {
    if (!q.active() || q.role != Role::kCrewmate) continue;
    if (std::find(fire.cells.begin(), fire.cells.end(), q.position) != fire.cells.end()) continue;
    bool sees = in_view(q.position, q.orientation, shooter);
    for (std::size_t i = 0; !sees && i < fire.cells.size(); ++i) {
      sees = in_view(q.position, q.orientation, fire.cells[i]);
    }
    if (sees) result.witnesses.push_back(q.id);
  }
  result.triggered = !result.witnesses.empty();
  return result;
}

void begin_voting(WorldState& state, VotingTrigger trigger, StepOutcome& out) {
  const auto& slots = state.map->voting_slots();
  for (auto& p : state.players) {
    if (!p.active()) {
      state.vote_ledger[p.id] = Vote::inactive();
      continue;
    }
    p.pre_vote_position = p.position;
    p.pre_vote_orientation = p.orientation;
    place(state, p, slots[p.id]);
    p.orientation = Direction::kNorth;
    state.vote_ledger[p.id] = Vote::abstain();
  }
  state.phase = Phase::kVoting;
  state.voting_clock = 0;
  ++state.voting_rounds;
  out.events.emplace_back(event::VotingStarted{trigger});
}

void resolve_voting_step(WorldState& state, std::span<const PlayerAction> actions, StepOutcome& out) {
  const int n = state.num_players();
  for (const auto& p : state.players) {
    if (!p.active()) continue;
    const PlayerAction& a = actions[p.id];
    Vote choice;
    if (a.kind == ActionKind::kVoteAbstain) {
      choice = Vote::abstain();
    } else if (a.kind == ActionKind::kVoteFor && a.target >= 0 && a.target < n) {
      choice = Vote::for_player(a.target);
    } else {
      continue;
    }
    state.vote_ledger[p.id] = choice;
    out.events.emplace_back(event::VoteCast{p.id, choice});
  }
  ++state.voting_clock;
  if (state.voting_clock >= state.config.voting_phase_length) {
    std::vector<Status> statuses;
    statuses.reserve(n);
    for (const auto& p : state.players) statuses.push_back(p.status);
    end_voting(state, tally_votes(state.vote_ledger, statuses), out);
  }
}

std::optional<int> tally_votes(std::span<const Vote> ledger, std::span<const Status> statuses) {
  const int n = static_cast<int>(ledger.size());
  int active = 0;
  std::vector<int> votes(n, 0);
  for (int p = 0; p < n; ++p) {
    if (statuses[p] != Status::kActive) continue;
    ++active;
    const Vote& v = ledger[p];
    if (v.kind == Vote::Kind::kTarget && v.target >= 0 && v.target < n) ++votes[v.target];
  }
  const int threshold = (active + 1) / 2;
  int best = -1;
  int best_votes = 0;
  bool tied = false;
  for (int p = 0; p < n; ++p) {
    if (votes[p] < threshold || votes[p] == 0) continue;
    if (votes[p] > best_votes) {
      best = p;
      best_votes = votes[p];
      tied = false;
    } else if (votes[p] == best_votes) {
      tied = true;
    }
  }
  if (best < 0 || tied) return std::nullopt;
  return best;
}

void end_voting(WorldState& state, std::optional<int> jailed, StepOutcome& out) {
  const GameConfig& cfg = state.config;
  if (jailed) {
    const Role jailed_role = state.players[*jailed].role;
    for (const auto& v : state.players) {
      if (!v.active() || v.id == *jailed) continue;
      const Vote& vote = state.vote_ledger[v.id];
      if (vote.kind != Vote::Kind::kTarget || vote.target != *jailed) continue;
      out.rewards[v.id] += v.role != jailed_role ? cfg.reward_vote_success : cfg.reward_vote_failure;
    }
  }

  // Vacate the voting slots before anyone is placed back on the floor.
  for (auto& p : state.players) {
    if (p.active()) state.occupancy[state.map->index(p.position)] = -1;
  }
  for (auto& p : state.players) {
    if (!p.active()) continue;
    if (jailed && p.id == *jailed) {
      p.status = Status::kJailed;
      p.position = state.map->jail_cells()[p.id];
      p.pre_vote_position.reset();
      state.vote_ledger[p.id] = Vote::inactive();
      if (p.role == Role::kCrewmate) state.last_crew_inactivation = Inactivation::kVote;
      out.events.emplace_back(event::Jailed{p.id});
    } else {
      p.position = p.pre_vote_position.value_or(p.position);
      p.orientation = p.pre_vote_orientation;
      p.pre_vote_position.reset();
      state.vote_ledger[p.id] = Vote::abstain();
    }
    state.occupancy[state.map->index(p.position)] = static_cast<std::int8_t>(p.id);
  }
  out.events.emplace_back(event::PhaseEnded{});
  state.phase = Phase::kSituation;
  state.situation_clock = 0;
  state.voting_clock = 0;
  if (!state.terminal) state.terminal = check_win(state);
}

std::optional<WinCondition> check_win(const WorldState& state) {
  if (state.progress >= state.config.fuel_goal) return WinCondition::kCrewWinByTask;
  bool impostor_active = false;
  for (const auto& p : state.players) impostor_active |= p.role == Role::kImpostor && p.active();
  if (!impostor_active) return WinCondition::kCrewWinByVote;
  if (state.active_crewmates() <= 1) {
    if (state.last_crew_inactivation == Inactivation::kVote) return WinCondition::kImpostorWinByVote;
    return WinCondition::kImpostorWinByFreeze;
  }
  if (state.episode_clock >= state.config.episode_limit) return WinCondition::kDrawTimeout;
  return std::nullopt;
}

std::vector<double> terminal_rewards(WinCondition win, std::span<const Role> roles,
                                     const GameConfig& config) {
  std::vector<double> out(roles.size(), 0.0);
  if (win == WinCondition::kDrawTimeout) return out;
  const bool crew_won = win == WinCondition::kCrewWinByTask || win == WinCondition::kCrewWinByVote;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    const bool winner = (roles[i] == Role::kCrewmate) == crew_won;
    out[i] = winner ? config.reward_win : config.reward_loss;
  }
  return out;
}

}  // namespace hidden_agenda::rules
