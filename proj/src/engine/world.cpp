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

#include "hidden_agenda/world.hpp"

#include <cstring>
#include <string_view>

#include "hidden_agenda/view_window.hpp"

namespace hidden_agenda {
namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001B3ULL;
    }
  }
  void i64(std::int64_t v) { bytes(&v, sizeof v); }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
  }
  void str(std::string_view s) {
    i64(static_cast<std::int64_t>(s.size()));
    bytes(s.data(), s.size());
  }
  void cell(Cell c) {
    i64(c.x);
    i64(c.y);
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xCBF29CE484222325ULL;
};

}  // namespace

int WorldState::active_crewmates() const {
  int n = 0;
  for (const auto& p : players) n += (p.role == Role::kCrewmate && p.active()) ? 1 : 0;
  return n;
}

int WorldState::active_players() const {
  int n = 0;
  for (const auto& p : players) n += p.active() ? 1 : 0;
  return n;
}

bool operator==(const WorldState& a, const WorldState& b) {
  const bool same_map = a.map == b.map || (a.map && b.map && a.map->to_text() == b.map->to_text());
  return same_map && a.config == b.config && a.players == b.players &&
         a.pad_respawn == b.pad_respawn && a.phase == b.phase &&
         a.situation_clock == b.situation_clock && a.voting_clock == b.voting_clock &&
         a.episode_clock == b.episode_clock && a.progress == b.progress &&
         a.voting_rounds == b.voting_rounds && a.vote_ledger == b.vote_ledger && a.rng == b.rng &&
         a.terminal == b.terminal && a.last_crew_inactivation == b.last_crew_inactivation &&
         a.occupancy == b.occupancy && a.beam_cells == b.beam_cells &&
         a.beam_shooter == b.beam_shooter;
}

std::uint64_t state_digest(const WorldState& s) {
  Fnv1a h;
  for (const auto& [k, v] : config_to_pairs(s.config)) {
    h.str(k);
    h.str(v);
  }
  h.str(s.map ? s.map->name() : "");
  for (const auto& p : s.players) {
    h.i64(p.id);
    h.i64(static_cast<int>(p.role));
    h.i64(p.color);
    h.cell(p.position);
    h.i64(static_cast<int>(p.orientation));
    h.i64(p.inventory);
    h.i64(static_cast<int>(p.status));
    h.i64(p.cooldown_remaining);
    h.i64(p.pre_vote_position.has_value());
    if (p.pre_vote_position) h.cell(*p.pre_vote_position);
    h.i64(static_cast<int>(p.pre_vote_orientation));
  }
  for (int r : s.pad_respawn) h.i64(r);
  h.i64(static_cast<int>(s.phase));
  h.i64(s.situation_clock);
  h.i64(s.voting_clock);
  h.i64(s.episode_clock);
  h.i64(s.progress);
  h.i64(s.voting_rounds);
  for (const auto& v : s.vote_ledger) {
    h.i64(static_cast<int>(v.kind));
    h.i64(v.target);
  }
  h.u64(s.rng.seed());
  h.u64(s.rng.counter());
  h.i64(s.terminal ? static_cast<int>(*s.terminal) : -1);
  h.i64(static_cast<int>(s.last_crew_inactivation));
  h.bytes(s.occupancy.data(), s.occupancy.size());
  for (Cell c : s.beam_cells) h.cell(c);
  h.i64(s.beam_shooter);
  return h.value();
}

std::array<Cell, kViewCells> view_window(Cell observer, Direction facing) {
  std::array<Cell, kViewCells> out;
  for (int row = 0; row < kViewSize; ++row) {
    for (int col = 0; col < kViewSize; ++col) {
      out[row * kViewSize + col] = view_cell(observer, facing, row, col);
    }
  }
  return out;
}

}  // namespace hidden_agenda
