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

// Hand-built episode records with known positions and votes, plus the
// closed-form pair metrics they must produce.

#include <cmath>
#include <utility>
#include <vector>

#include "hidden_agenda/harness.hpp"

namespace hidden_agenda::testing {

// Builds a record by stepping the engine with a scripted per-step action
// function, the same way the runner records.
template <class Script>
EpisodeRecord hand_record(const GameConfig& config, std::uint64_t seed, int steps, Script script) {
  WorldState s = reset(config, seed);
  EpisodeRecord r;
  r.config = config;
  r.seed = seed;
  r.roster = parse_roster("idle / idle idle idle idle");
  r.seat_agent = assign_agents(s, r.roster);
  for (const auto& p : s.players) {
    r.roles.push_back(p.role);
    r.colors.push_back(p.color);
  }
  r.returns.assign(5, 0.0);
  for (int t = 0; t < steps && !s.terminal; ++t) {
    std::vector<PlayerAction> acts(5);
    script(s, t, acts);
    StepOutcome out = step(s, acts);
    for (int p = 0; p < 5; ++p) r.returns[p] += out.rewards[p];
    r.actions.push_back(acts);
    r.events.push_back(out.events);
    ++r.steps;
  }
  r.outcome = s.terminal;
  r.final_digest = state_digest(s);
  return r;
}

// Short phases; everyone stays at spawn except seat `a` (one step north at
// t=0) and seat `b` (north at t=0 and t=1). Each round, every seat casts its
// vote on the first voting step.
struct PairFixture {
  GameConfig config;
  std::uint64_t seed = 21;
  static constexpr int kSituation = 4;
  static constexpr int kVoting = 3;
  static constexpr int kRounds = 4;
  int a = 1, b = 3;
  // votes[round][seat]: -1 abstain.
  std::vector<std::vector<int>> votes = {
      {4, 4, -1, -1, -1},
      {4, 4, -1, -1, -1},
      {2, 2, -1, -1, -1},
      {3, 4, -1, -1, -1},
  };

  PairFixture() {
    config.situation_phase_length = kSituation;
    config.voting_phase_length = kVoting;
  }

  EpisodeRecord record() const {
    return hand_record(config, seed, kRounds * (kSituation + kVoting), [&](const WorldState& s, int t, auto& acts) {
      if (t == 0) {
        acts[a] = PlayerAction::move(Direction::kNorth);
        acts[b] = PlayerAction::move(Direction::kNorth);
      }
      if (t == 1) acts[b] = PlayerAction::move(Direction::kNorth);
      const int in_cycle = t % (kSituation + kVoting);
      if (s.phase == Phase::kVoting && in_cycle == kSituation) {
        const auto& row = votes[t / (kSituation + kVoting)];
        for (int p = 0; p < 5; ++p) acts[p] = row[p] < 0 ? PlayerAction::abstain() : PlayerAction::vote_for(row[p]);
      }
    });
  }

  // Seat-indexed mean Euclidean distance and vote agreement, computed
  // directly from the scripted positions and votes.
  using Matrix = std::vector<std::vector<double>>;
  std::pair<Matrix, Matrix> oracle() const {
    // Positions per sampled situation step, in seat terms.
    const auto spawns = resolve_map("canonical")->spawn_points();
    auto position = [&](int seat, int situation_step) {
      Cell c = spawns[seat];
      if (seat == a && situation_step >= 1) c.y -= 1;
      if (seat == b && situation_step >= 1) c.y -= 1;
      if (seat == b && situation_step >= 2) c.y -= 1;
      return c;
    };
    const int samples = PairFixture::kRounds * PairFixture::kSituation;
    std::vector<std::vector<double>> seat_distance(5, std::vector<double>(5)), seat_similarity = seat_distance;
    for (int p = 0; p < 5; ++p) {
      for (int q = 0; q < 5; ++q) {
        double sum = 0;
        for (int k = 0; k < samples; ++k) {
          const Cell u = position(p, k), v = position(q, k);
          sum += std::sqrt(double((u.x - v.x) * (u.x - v.x) + (u.y - v.y) * (u.y - v.y)));
        }
        seat_distance[p][q] = sum / samples;
        int same = 0;
        for (const auto& row : votes) same += row[p] == row[q];
        seat_similarity[p][q] = same / double(votes.size());
      }
    }
    return {seat_distance, seat_similarity};
  }
};

}  // namespace hidden_agenda::testing
