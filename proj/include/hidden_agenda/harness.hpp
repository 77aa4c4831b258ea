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

// Episode runner, replay persistence and analytics.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hidden_agenda/agents.hpp"
#include "hidden_agenda/engine.hpp"

namespace hidden_agenda {

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Policies by role. After reset, impostor seats (in increasing seat order)
// take `impostors` in order and crew seats take `crew`. Agent indices are
// impostors first, then crew. A paired collector's `partner` parameter is an
// index into `crew`.
struct Roster {
  std::vector<PolicySpec> impostors;
  std::vector<PolicySpec> crew;

  int size() const { return static_cast<int>(impostors.size() + crew.size()); }
  const PolicySpec& agent(int index) const;
  friend bool operator==(const Roster&, const Roster&) = default;
};

// "impostor specs / crew specs", specs separated by whitespace, e.g.
// "chaser / collector collector paired_collector:partner=3 paired_collector:partner=2".
Roster parse_roster(std::string_view text);
std::string format_roster(const Roster& roster);

// Seat -> agent index for a reset state.
std::vector<int> assign_agents(const WorldState& state, const Roster& roster);

// One policy per seat, seeded from the episode seed and the agent index.
std::vector<std::unique_ptr<Policy>> build_policies(const WorldState& state, const Roster& roster,
                                                    const std::vector<int>& seat_agent, std::uint64_t seed);

inline constexpr int kReplayFormatVersion = 1;

struct EpisodeRecord {
  int format_version = kReplayFormatVersion;
  GameConfig config;
  std::uint64_t seed = 0;
  Roster roster;
  std::vector<int> seat_agent;
  std::vector<Role> roles;
  std::vector<int> colors;
  std::vector<std::vector<PlayerAction>> actions;  // per step, per seat
  std::vector<std::vector<Event>> events;          // per step
  std::optional<WinCondition> outcome;
  std::vector<double> returns;  // per seat
  int steps = 0;
  std::uint64_t final_digest = 0;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

// Steps the engine to a terminal state. With `record` false the action and
// event logs are left empty.
EpisodeRecord run_episode(const GameConfig& config, std::uint64_t seed, const Roster& roster,
                          bool record = true);

struct WinHistogram {
  std::array<int, kNumWinConditions> counts{};
  int total() const;
  double frequency(WinCondition w) const;
  int& operator[](WinCondition w) { return counts[static_cast<int>(w)]; }
  int operator[](WinCondition w) const { return counts[static_cast<int>(w)]; }
  friend bool operator==(const WinHistogram&, const WinHistogram&) = default;
};

struct BatchResult {
  WinHistogram histogram;
  int episodes = 0;
  long long total_steps = 0;
  std::vector<double> mean_return_by_agent;
  double elapsed_seconds = 0.0;
  double episodes_per_second = 0.0;
  std::vector<EpisodeRecord> records;  // in seed order, when kept
};

BatchResult run_batch(const GameConfig& config, const std::vector<std::uint64_t>& seeds,
                      const Roster& roster, int parallelism, bool keep_records = false);

// Agent-indexed matrices; `seat_order[k]` is the agent shown in slot k.
struct PairMatrices {
  int size = 0;
  std::vector<int> seat_order;
  std::vector<std::optional<double>> distance;         // size x size, slot order
  std::vector<std::optional<double>> vote_similarity;  // size x size, slot order
  std::optional<double> distance_at(int a, int b) const { return distance[a * size + b]; }
  std::optional<double> similarity_at(int a, int b) const { return vote_similarity[a * size + b]; }
};

// Throws ReplayError on an empty record set or mismatched configs.
PairMatrices pair_metrics(const std::vector<EpisodeRecord>& records);

// Ledger after each voting step of round `round` (0-based): rows are steps,
// columns seats. Throws ReplayError when the round does not exist.
std::vector<std::vector<Vote>> vote_timeline(const EpisodeRecord& record, int round);
int count_voting_rounds(const EpisodeRecord& record);
std::string format_vote_timeline(const std::vector<std::vector<Vote>>& timeline);
// Color strip: one cell per (step, seat), grey abstain, black inactive,
// seat color otherwise.
void write_vote_timeline_png(const std::vector<std::vector<Vote>>& timeline,
                             const std::vector<int>& colors, const std::filesystem::path& path,
                             int cell_pixels = 12);

void save_replay(const EpisodeRecord& record, const std::filesystem::path& path);
EpisodeRecord load_replay(const std::filesystem::path& path);
std::string replay_to_json(const EpisodeRecord& record);
EpisodeRecord replay_from_json(std::string_view text);

struct ReplayCheck {
  bool ok = false;
  int first_mismatch_step = -1;
  std::string message;
};
// Re-simulates from (config, seed, actions) and compares events, rewards,
// outcome and final digest.
ReplayCheck verify_replay(const EpisodeRecord& record);

struct ThroughputReport {
  long long env_steps = 0;
  int num_players = 0;
  double seconds = 0.0;
  double env_steps_per_second = 0.0;
  double agent_steps_per_second = 0.0;
};
// Random joint actions from reset; `render` adds observe_all each step.
ThroughputReport measure_throughput(const GameConfig& config, long long env_steps, bool render,
                                    std::uint64_t seed = 1);

}  // namespace hidden_agenda
