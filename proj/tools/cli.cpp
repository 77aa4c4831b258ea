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

// hidden_agenda: batch runs, analytics, timelines, replay checks and
// throughput measurement.

#include <fnmatch.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <thread>

#include "CLI11.hpp"
#include "hidden_agenda/harness.hpp"
#include "hidden_agenda/json_io.hpp"

namespace fs = std::filesystem;
using namespace hidden_agenda;
using json_io::json;

namespace {

constexpr const char* kDefaultRoster = "chaser / collector collector collector collector";

std::vector<fs::path> expand(const std::vector<std::string>& patterns) {
  std::vector<fs::path> out;
  for (const auto& pattern : patterns) {
    const fs::path p(pattern);
    if (fs::is_directory(p)) {
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.path().extension() == ".json") out.push_back(e.path());
      }
      continue;
    }
    if (pattern.find_first_of("*?[") == std::string::npos) {
      out.push_back(p);
      continue;
    }
    const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    const std::string name = p.filename().string();
    if (!fs::is_directory(dir)) continue;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (fnmatch(name.c_str(), e.path().filename().string().c_str(), 0) == 0) out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

json histogram_json(const WinHistogram& h) {
  json j = json::object();
  for (int w = 0; w < kNumWinConditions; ++w) j[std::string(to_string(static_cast<WinCondition>(w)))] = h.counts[w];
  return j;
}

void print_histogram(const WinHistogram& h) {
  std::cout << "win conditions (" << h.total() << " episodes)\n";
  for (int w = 0; w < kNumWinConditions; ++w) {
    const auto cond = static_cast<WinCondition>(w);
    std::cout << "  " << std::left << std::setw(22) << to_string(cond) << std::right << std::setw(6) << h[cond]
              << "  " << std::fixed << std::setprecision(3) << h.frequency(cond) << "\n";
  }
}

json matrix_json(const std::vector<std::optional<double>>& m) {
  json out = json::array();
  for (const auto& v : m) out.push_back(v ? json(*v) : json(nullptr));
  return out;
}

void print_matrix(const char* title, const PairMatrices& pm, const std::vector<std::optional<double>>& m) {
  std::cout << title << " (slot order: agents";
  for (int a : pm.seat_order) std::cout << ' ' << a;
  std::cout << ")\n";
  for (int i = 0; i < pm.size; ++i) {
    std::cout << "  ";
    for (int j = 0; j < pm.size; ++j) {
      const auto& v = m[i * pm.size + j];
      if (v) std::cout << std::setw(8) << std::fixed << std::setprecision(3) << *v;
      else std::cout << std::setw(8) << "-";
    }
    std::cout << "\n";
  }
}

GameConfig load_config(const std::string& path) { return path.empty() ? GameConfig{} : load_config_file(path); }

int cmd_run(const std::string& config_path, const std::string& roster_text, int episodes, std::uint64_t seed_start,
            const std::string& out_dir, int parallelism, bool record) {
  const GameConfig config = load_config(config_path);
  const Roster roster = parse_roster(roster_text);
  std::vector<std::uint64_t> seeds(episodes);
  std::iota(seeds.begin(), seeds.end(), seed_start);
  const BatchResult result = run_batch(config, seeds, roster, parallelism, record);
  print_histogram(result.histogram);
  std::cout << "episodes/s " << std::setprecision(2) << result.episodes_per_second << ", env steps "
            << result.total_steps << "\n";
  std::cout << "mean return by agent:";
  for (double r : result.mean_return_by_agent) std::cout << ' ' << std::setprecision(3) << r;
  std::cout << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream summary(fs::path(out_dir) / "summary.jsonl");
    summary << json{{"record", "batch"},
                    {"roster", format_roster(roster)},
                    {"episodes", result.episodes},
                    {"seed_start", seed_start},
                    {"histogram", histogram_json(result.histogram)},
                    {"total_steps", result.total_steps},
                    {"episodes_per_second", result.episodes_per_second},
                    {"mean_return_by_agent", result.mean_return_by_agent}}
                   .dump()
            << "\n";
    for (const auto& r : result.records) {
      const std::string name = "episode_" + std::to_string(r.seed) + ".json";
      save_replay(r, fs::path(out_dir) / name);
      summary << json{{"record", "episode"},
                      {"seed", r.seed},
                      {"outcome", r.outcome ? std::string(to_string(*r.outcome)) : "none"},
                      {"steps", r.steps},
                      {"returns", r.returns},
                      {"replay", name}}
                     .dump()
              << "\n";
    }
  }
  return 0;
}

int cmd_analyze(const std::vector<std::string>& patterns, const std::string& table_path) {
  const auto files = expand(patterns);
  if (files.empty()) throw ReplayError("no replay files matched");
  std::vector<EpisodeRecord> records;
  WinHistogram h;
  for (const auto& f : files) {
    records.push_back(load_replay(f));
    if (records.back().outcome) ++h[*records.back().outcome];
  }
  print_histogram(h);
  const PairMatrices pm = pair_metrics(records);
  print_matrix("distance", pm, pm.distance);
  print_matrix("vote similarity", pm, pm.vote_similarity);
  if (!table_path.empty()) {
    std::ofstream out(table_path);
    out << json{{"record", "histogram"}, {"episodes", h.total()}, {"counts", histogram_json(h)}}.dump() << "\n";
    out << json{{"record", "pair_matrices"},
                {"size", pm.size},
                {"seat_order", pm.seat_order},
                {"distance", matrix_json(pm.distance)},
                {"vote_similarity", matrix_json(pm.vote_similarity)}}
               .dump()
        << "\n";
  }
  return 0;
}

int cmd_timeline(const std::string& path, int round, const std::string& png) {
  const EpisodeRecord r = load_replay(path);
  const auto timeline = vote_timeline(r, round);
  std::cout << format_vote_timeline(timeline);
  if (!png.empty()) write_vote_timeline_png(timeline, r.colors, png);
  return 0;
}

int cmd_verify(const std::vector<std::string>& patterns) {
  const auto files = expand(patterns);
  if (files.empty()) throw ReplayError("no replay files matched");
  int failures = 0;
  for (const auto& f : files) {
    json line{{"record", "verify"}, {"file", f.string()}};
    try {
      const ReplayCheck c = verify_replay(load_replay(f));
      line["ok"] = c.ok;
      if (!c.ok) line["message"] = c.message;
      failures += !c.ok;
    } catch (const std::exception& e) {
      line["ok"] = false;
      line["message"] = e.what();
      ++failures;
    }
    std::cout << line.dump() << "\n";
  }
  return failures == 0 ? 0 : 1;
}

int cmd_bench(const std::string& config_path, long long steps, bool render) {
  const GameConfig config = load_config(config_path);
  const ThroughputReport r = measure_throughput(config, steps, render);
  std::cout << json{{"record", "throughput"},
                    {"render", render},
                    {"env_steps", r.env_steps},
                    {"seconds", r.seconds},
                    {"env_steps_per_second", r.env_steps_per_second},
                    {"agent_steps_per_second", r.agent_steps_per_second}}
                   .dump()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden Agenda batch runner and analytics"};
  app.require_subcommand(1);

  std::string config_path, roster = kDefaultRoster, out_dir, table, replay, png;
  int episodes = 100, parallelism = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int round = 0;
  std::uint64_t seed_start = 0;
  bool record = false, render = false;
  long long steps = 100000;
  std::vector<std::string> patterns;

  auto* run = app.add_subcommand("run", "Run a batch of episodes");
  run->add_option("-c,--config", config_path, "Config file (key = value)");
  run->add_option("-r,--roster", roster, "Roster: 'impostor specs / crew specs'");
  run->add_option("-n,--episodes", episodes, "Number of seeds")->check(CLI::PositiveNumber);
  run->add_option("-s,--seed-start", seed_start, "First seed");
  run->add_option("-o,--out", out_dir, "Output directory for summary.jsonl and replays");
  run->add_option("-j,--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--record", record, "Keep action/event logs and write replays");

  auto* analyze = app.add_subcommand("analyze", "Histogram and pair matrices over replays");
  analyze->add_option("replays", patterns, "Replay files, directories or globs")->required();
  analyze->add_option("-t,--table", table, "Write machine-readable JSONL table here");

  auto* timeline = app.add_subcommand("timeline", "Vote timeline of one voting round");
  timeline->add_option("replay", replay, "Replay file")->required();
  timeline->add_option("-k,--round", round, "Voting round (0-based)");
  timeline->add_option("--png", png, "Also write a color-strip image");

  auto* verify = app.add_subcommand("replay-verify", "Re-simulate replays and compare");
  verify->add_option("replays", patterns, "Replay files, directories or globs")->required();

  auto* bench = app.add_subcommand("bench", "Engine throughput");
  bench->add_option("-c,--config", config_path, "Config file");
  bench->add_option("--steps", steps, "Environment steps")->check(CLI::PositiveNumber);
  bench->add_flag("--render", render, "Render every player's observation each step");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config_path, roster, episodes, seed_start, out_dir, parallelism, record);
    if (*analyze) return cmd_analyze(patterns, table);
    if (*timeline) return cmd_timeline(replay, round, png);
    if (*verify) return cmd_verify(patterns);
    if (*bench) return cmd_bench(config_path, steps, render);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
