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

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hidden_agenda/harness.hpp"
#include "hidden_agenda/observation.hpp"

namespace hidden_agenda {
namespace {

// Ledger tracked from the event log.
struct VoteTracker {
  explicit VoteTracker(int n) : active(n, true), ledger(n, Vote::abstain()) {}

  // Applies one step's events. Returns true when a round finished in it.
  bool apply(const std::vector<Event>& events) {
    bool finished = false;
    for (const auto& e : events) {
      if (const auto* f = std::get_if<event::Frozen>(&e)) {
        active[f->victim] = false;
      } else if (std::holds_alternative<event::VotingStarted>(e)) {
        in_round = true;
        round_active = active;
        for (std::size_t p = 0; p < ledger.size(); ++p) ledger[p] = active[p] ? Vote::abstain() : Vote::inactive();
      } else if (const auto* v = std::get_if<event::VoteCast>(&e)) {
        ledger[v->player] = v->choice;
      } else if (const auto* j = std::get_if<event::Jailed>(&e)) {
        final_ledger = ledger;
        jailed_now = j->player;
      } else if (std::holds_alternative<event::PhaseEnded>(e)) {
        if (jailed_now < 0) final_ledger = ledger;
        if (jailed_now >= 0) active[jailed_now] = false;
        jailed_now = -1;
        in_round = false;
        finished = true;
      }
    }
    return finished;
  }

  std::vector<bool> active;
  std::vector<bool> round_active;
  std::vector<Vote> ledger;
  std::vector<Vote> final_ledger;
  bool in_round = false;
  int jailed_now = -1;
};

void require_events(const EpisodeRecord& r) {
  if (r.events.size() != static_cast<std::size_t>(r.steps) || r.actions.size() != static_cast<std::size_t>(r.steps)) {
    throw ReplayError("record has no action/event log (recorded with logging off?)");
  }
}

}  // namespace

PairMatrices pair_metrics(const std::vector<EpisodeRecord>& records) {
  if (records.empty()) throw ReplayError("pair_metrics needs at least one record");
  const int m = records.front().roster.size();
  for (const auto& r : records) {
    if (!(r.config == records.front().config) || r.roster.size() != m) {
      throw ReplayError("pair_metrics records must share a config and roster size");
    }
    require_events(r);
  }
  std::vector<double> dist_sum(m * m, 0.0), same(m * m, 0.0);
  std::vector<long long> dist_n(m * m, 0), rounds(m * m, 0);

  for (const auto& r : records) {
    const int n = static_cast<int>(r.seat_agent.size());
    WorldState state = reset(r.config, r.seed);
    VoteTracker votes(n);
    for (int t = 0; t < r.steps; ++t) {
      if (state.phase == Phase::kSituation) {
        for (int a = 0; a < n; ++a) {
          for (int b = a + 1; b < n; ++b) {
            if (!state.players[a].active() || !state.players[b].active()) continue;
            const Cell d = state.players[a].position - state.players[b].position;
            const double dist = std::hypot(d.x, d.y);
            for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
              const int k = r.seat_agent[x] * m + r.seat_agent[y];
              dist_sum[k] += dist;
              ++dist_n[k];
            }
          }
        }
      }
      step(state, r.actions[t]);
      if (votes.apply(r.events[t])) {
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            if (!votes.round_active[a] || !votes.round_active[b]) continue;
            const int k = r.seat_agent[a] * m + r.seat_agent[b];
            ++rounds[k];
            if (votes.final_ledger[a] == votes.final_ledger[b]) same[k] += 1.0;
          }
        }
      }
    }
  }

  // Agent-indexed results, then reorder.
  auto dist_of = [&](int a, int b) -> std::optional<double> {
    if (a == b) return 0.0;
    const int k = a * m + b;
    if (dist_n[k] == 0) return std::nullopt;
    return dist_sum[k] / static_cast<double>(dist_n[k]);
  };
  auto sim_of = [&](int a, int b) -> std::optional<double> {
    const int k = a * m + b;
    if (rounds[k] == 0) return std::nullopt;
    if (a == b) return 1.0;
    return same[k] / static_cast<double>(rounds[k]);
  };

  const int impostors = static_cast<int>(records.front().roster.impostors.size());
  PairMatrices out;
  out.size = m;
  for (int a = 0; a < impostors; ++a) out.seat_order.push_back(a);
  int best_a = -1, best_b = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int a = impostors; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const auto d = dist_of(a, b);
      if (d && *d < best) {
        best = *d;
        best_a = a;
        best_b = b;
      }
    }
  }
  if (best_a >= 0) {
    out.seat_order.push_back(best_a);
    out.seat_order.push_back(best_b);
  }
  for (int a = impostors; a < m; ++a) {
    if (a != best_a && a != best_b) out.seat_order.push_back(a);
  }
  out.distance.resize(m * m);
  out.vote_similarity.resize(m * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.distance[i * m + j] = dist_of(out.seat_order[i], out.seat_order[j]);
      out.vote_similarity[i * m + j] = sim_of(out.seat_order[i], out.seat_order[j]);
    }
  }
  return out;
}

int count_voting_rounds(const EpisodeRecord& record) {
  require_events(record);
  int rounds = 0;
  for (const auto& step_events : record.events) {
    for (const auto& e : step_events) rounds += std::holds_alternative<event::VotingStarted>(e);
  }
  return rounds;
}

std::vector<std::vector<Vote>> vote_timeline(const EpisodeRecord& record, int round) {
  require_events(record);
  const int n = static_cast<int>(record.seat_agent.size());
  VoteTracker votes(n);
  int started = 0;
  std::vector<std::vector<Vote>> out;
  for (int t = 0; t < record.steps; ++t) {
    const bool voting_step = votes.in_round;
    const bool finished = votes.apply(record.events[t]);
    if (voting_step && started - 1 == round) {
      out.push_back(finished ? votes.final_ledger : votes.ledger);
      if (finished) return out;
    }
    if (!voting_step && votes.in_round) ++started;
  }
  if (round < 0 || round >= started || out.empty()) {
    throw ReplayError("voting round " + std::to_string(round) + " not in record (" + std::to_string(started) +
                      " rounds)");
  }
  return out;
}

std::string format_vote_timeline(const std::vector<std::vector<Vote>>& timeline) {
  std::ostringstream out;
  if (timeline.empty()) return "";
  const int n = static_cast<int>(timeline.front().size());
  out << "step";
  for (int s = 0; s < n; ++s) out << "\tseat" << s;
  out << "\n";
  for (std::size_t t = 0; t < timeline.size(); ++t) {
    out << t + 1;
    for (const Vote& v : timeline[t]) {
      out << '\t';
      if (v.kind == Vote::Kind::kTarget) out << v.target;
      else if (v.kind == Vote::Kind::kAbstain) out << "abstain";
      else out << "inactive";
    }
    out << "\n";
  }
  return out.str();
}

void write_vote_timeline_png(const std::vector<std::vector<Vote>>& timeline, const std::vector<int>& colors,
                             const std::filesystem::path& path, int cell_pixels) {
  if (timeline.empty()) throw ReplayError("empty vote timeline");
  const int seats = static_cast<int>(timeline.front().size());
  const int width = seats * cell_pixels;
  const int height = static_cast<int>(timeline.size()) * cell_pixels;
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(width) * height * 3, 255);
  const auto& sheet = SpriteSheet::builtin();
  for (int t = 0; t < static_cast<int>(timeline.size()); ++t) {
    for (int s = 0; s < seats; ++s) {
      const Vote& v = timeline[t][s];
      SpriteSheet::Rgb c{128, 128, 128};
      if (v.kind == Vote::Kind::kInactive) c = {0, 0, 0};
      if (v.kind == Vote::Kind::kTarget) c = sheet.player_color(colors.at(v.target));
      for (int y = 1; y < cell_pixels; ++y) {
        for (int x = 1; x < cell_pixels; ++x) {
          std::uint8_t* px = &rgb[((t * cell_pixels + y) * width + s * cell_pixels + x) * 3];
          px[0] = c[0];
          px[1] = c[1];
          px[2] = c[2];
        }
      }
    }
  }

  FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw ReplayError("cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw ReplayError("PNG encoding failed for " + path.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) png_write_row(png, &rgb[static_cast<std::size_t>(y) * width * 3]);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace hidden_agenda
