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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <mutex>
#include <thread>

#include "hidden_agenda/harness.hpp"
#include "hidden_agenda/rng.hpp"

namespace hidden_agenda {

const PolicySpec& Roster::agent(int index) const {
  const int k = static_cast<int>(impostors.size());
  return index < k ? impostors.at(index) : crew.at(index - k);
}

Roster parse_roster(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw ConfigError("roster needs 'impostor specs / crew specs': '" + std::string(text) + "'");
  }
  auto parse_list = [](std::string_view part) {
    std::vector<PolicySpec> out;
    std::istringstream in{std::string(part)};
    std::string token;
    while (in >> token) out.push_back(parse_policy_spec(token));
    return out;
  };
  return {parse_list(text.substr(0, slash)), parse_list(text.substr(slash + 1))};
}

std::string format_roster(const Roster& roster) {
  std::string out;
  for (const auto& s : roster.impostors) out += format_policy_spec(s) + " ";
  out += "/";
  for (const auto& s : roster.crew) out += " " + format_policy_spec(s);
  return out;
}

std::vector<int> assign_agents(const WorldState& state, const Roster& roster) {
  const int impostors = static_cast<int>(roster.impostors.size());
  const int crew = static_cast<int>(roster.crew.size());
  if (impostors != state.config.num_impostors || crew != state.config.num_crewmates()) {
    throw ConfigError("roster has " + std::to_string(impostors) + " impostor and " + std::to_string(crew) +
                      " crew policies; config needs " + std::to_string(state.config.num_impostors) + " and " +
                      std::to_string(state.config.num_crewmates()));
  }
  std::vector<int> seat_agent(state.num_players(), -1);
  int next_impostor = 0;
  int next_crew = impostors;
  for (const auto& p : state.players) {
    seat_agent[p.id] = p.role == Role::kImpostor ? next_impostor++ : next_crew++;
  }
  return seat_agent;
}

std::vector<std::unique_ptr<Policy>> build_policies(const WorldState& state, const Roster& roster,
                                                    const std::vector<int>& seat_agent, std::uint64_t seed) {
  const int n = state.num_players();
  std::vector<int> agent_seat(n);
  for (int s = 0; s < n; ++s) agent_seat[seat_agent[s]] = s;
  std::vector<std::unique_ptr<Policy>> policies;
  for (int s = 0; s < n; ++s) {
    const PolicySpec& spec = roster.agent(seat_agent[s]);
    PolicyContext ctx;
    ctx.seat = s;
    ctx.role = state.players[s].role;
    ctx.config = state.config;
    ctx.map = state.map;
    ctx.seed = derive_seed(seed, 1000 + seat_agent[s]);
    if (spec.kind == PolicyKind::kPairedCollectorCrew) {
      const int partner = static_cast<int>(spec.param("partner", -1));
      if (partner < 0 || partner >= static_cast<int>(roster.crew.size())) {
        throw ConfigError("paired_collector partner must index the crew list");
      }
      ctx.partner_seat = agent_seat[static_cast<int>(roster.impostors.size()) + partner];
    }
    policies.push_back(make_policy(spec, ctx));
  }
  return policies;
}

EpisodeRecord run_episode(const GameConfig& config, std::uint64_t seed, const Roster& roster, bool record) {
  WorldState state = reset(config, seed);
  EpisodeRecord rec;
  rec.config = config;
  rec.seed = seed;
  rec.roster = roster;
  rec.seat_agent = assign_agents(state, roster);
  const int n = state.num_players();
  for (const auto& p : state.players) {
    rec.roles.push_back(p.role);
    rec.colors.push_back(p.color);
  }
  rec.returns.assign(n, 0.0);

  auto policies = build_policies(state, roster, rec.seat_agent, seed);
  std::vector<bool> needs_view(n);
  for (int s = 0; s < n; ++s) needs_view[s] = policies[s]->kind() != PolicyKind::kIdle;
  std::vector<ObservationBundle> obs(n);
  auto refresh = [&] {
    for (int s = 0; s < n; ++s) {
      if (needs_view[s]) obs[s] = observe(state, s);
    }
  };
  refresh();
  std::vector<PlayerAction> actions(n);
  while (!state.terminal) {
    for (int s = 0; s < n; ++s) actions[s] = policies[s]->act(obs[s]);
    StepOutcome out = step(state, actions);
    for (int s = 0; s < n; ++s) rec.returns[s] += out.rewards[s];
    if (record) {
      rec.actions.push_back(actions);
      rec.events.push_back(std::move(out.events));
    }
    ++rec.steps;
    if (!state.terminal) refresh();
  }
  rec.outcome = state.terminal;
  rec.final_digest = state_digest(state);
  return rec;
}

int WinHistogram::total() const {
  int t = 0;
  for (int c : counts) t += c;
  return t;
}

double WinHistogram::frequency(WinCondition w) const {
  const int t = total();
  return t == 0 ? 0.0 : static_cast<double>((*this)[w]) / t;
}

BatchResult run_batch(const GameConfig& config, const std::vector<std::uint64_t>& seeds, const Roster& roster,
                      int parallelism, bool keep_records) {
  if (seeds.empty()) throw ConfigError("run_batch needs at least one seed");
  const auto start = std::chrono::steady_clock::now();
  std::vector<EpisodeRecord> results(seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        results[i] = run_episode(config, seeds[i], roster, keep_records);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = seeds.size();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(parallelism, static_cast<int>(seeds.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  BatchResult out;
  out.episodes = static_cast<int>(seeds.size());
  out.mean_return_by_agent.assign(roster.size(), 0.0);
  for (const auto& r : results) {
    if (r.outcome) ++out.histogram[*r.outcome];
    out.total_steps += r.steps;
    for (std::size_t s = 0; s < r.seat_agent.size(); ++s) out.mean_return_by_agent[r.seat_agent[s]] += r.returns[s];
  }
  for (double& m : out.mean_return_by_agent) m /= out.episodes;
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.episodes_per_second = out.elapsed_seconds > 0 ? out.episodes / out.elapsed_seconds : 0.0;
  if (keep_records) out.records = std::move(results);
  return out;
}

ThroughputReport measure_throughput(const GameConfig& config, long long env_steps, bool render, std::uint64_t seed) {
  WorldState state = reset(config, seed);
  const int n = state.num_players();
  const int ids = PlayerAction::num_ids(n);
  CounterRng pick(derive_seed(seed, 77));
  std::vector<PlayerAction> actions(n);
  volatile std::uint8_t sink = 0;
  const auto start = std::chrono::steady_clock::now();
  for (long long t = 0; t < env_steps; ++t) {
    for (int s = 0; s < n; ++s) actions[s] = PlayerAction::from_id(static_cast<int>(pick.below(ids)), n);
    step(state, actions);
    if (render) {
      const auto obs = observe_all(state);
      sink = sink ^ obs[0].rgb[t % kObsBytes];
    }
    if (state.terminal) state = reset(config, ++seed);
  }
  ThroughputReport r;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.env_steps = env_steps;
  r.num_players = n;
  r.env_steps_per_second = r.seconds > 0 ? env_steps / r.seconds : 0.0;
  r.agent_steps_per_second = r.env_steps_per_second * n;
  return r;
}

}  // namespace hidden_agenda
