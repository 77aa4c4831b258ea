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

#include "hidden_agenda/perception.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace hidden_agenda {
namespace {

constexpr int kMaxHypotheses = 32;

Terrain static_terrain(const GameMap& map, Cell c) {
  if (!map.in_bounds(c)) return Terrain::kVoid;
  switch (map.at(c)) {
    case CellKind::kWall: return Terrain::kWall;
    case CellKind::kFloor:
    case CellKind::kSpawn: return Terrain::kFloor;
    case CellKind::kFuelPad: return Terrain::kPadFull;
    case CellKind::kGrate: return Terrain::kGrate;
    case CellKind::kDeliberation: return Terrain::kDeliberation;
    case CellKind::kVotingSlot: return Terrain::kVotingSlot;
    case CellKind::kJail: return Terrain::kJail;
  }
  return Terrain::kVoid;
}

Direction rotate(Direction relative, Direction frame) {
  return static_cast<Direction>((static_cast<int>(relative) + static_cast<int>(frame)) % 4);
}

}  // namespace

Perception::Perception(const PolicyContext& context)
    : ctx_(context),
      seat_color_(context.config.num_players, -1),
      color_frozen_(context.config.num_players, false),
      pad_ready_at_(context.map->fuel_pads().size(), 0) {
  const GameMap& map = *ctx_.map;
  static_terrain_.resize(static_cast<std::size_t>(map.width()) * map.height());
  for (int i = 0; i < static_cast<int>(static_terrain_.size()); ++i) {
    static_terrain_[i] = static_terrain(map, map.cell_at(i));
  }
  seat_color_[ctx_.seat] = -1;
}

Pose Perception::pose() const {
  if (hypotheses_.empty()) return {ctx_.map->spawn_points()[ctx_.seat], Direction::kNorth};
  return hypotheses_.front();
}

bool Perception::matches(const Pose& pose) const {
  const GameMap& map = *ctx_.map;
  for (int r = 0; r < kViewSize; ++r) {
    for (int c = 0; c < kViewSize; ++c) {
      const Cell w = view_cell(pose.position, pose.facing, r, c);
      const Terrain expected = map.in_bounds(w) ? static_terrain_[map.index(w)] : Terrain::kVoid;
      const Terrain seen = tiles_[r * kViewSize + c].terrain;
      if (expected == Terrain::kPadFull) {
        if (seen != Terrain::kPadFull && seen != Terrain::kPadEmpty) return false;
      } else if (seen != expected) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Pose> Perception::predict() const {
  std::vector<Pose> out;
  const GameMap& map = *ctx_.map;
  for (const Pose& h : hypotheses_) {
    Pose p = h;
    switch (last_action_.kind) {
      case ActionKind::kTurnLeft: p.facing = turn_left(p.facing); break;
      case ActionKind::kTurnRight: p.facing = turn_right(p.facing); break;
      default: break;
    }
    if (last_action_.is_move()) {
      const Cell target = p.position + forward_vector(last_action_.move_direction());
      if (map.walkable(target)) out.push_back({target, p.facing});
    }
    out.push_back(p);
  }
  // Stable de-duplication keeps the preferred (moved) hypotheses first.
  std::vector<Pose> unique;
  for (const Pose& p : out) {
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(p);
  }
  return unique;
}

void Perception::relocalize(Cell near) {
  hypotheses_.clear();
  const GameMap& map = *ctx_.map;
  for (int i = 0; i < map.width() * map.height(); ++i) {
    const Cell c = map.cell_at(i);
    if (!map.walkable(c)) continue;
    for (int d = 0; d < 4; ++d) {
      const Pose p{c, static_cast<Direction>(d)};
      if (matches(p)) hypotheses_.push_back(p);
    }
  }
  // Symmetric rooms look alike; the one nearest the last estimate wins.
  auto gap = [near](const Pose& p) { return std::abs(p.position.x - near.x) + std::abs(p.position.y - near.y); };
  std::stable_sort(hypotheses_.begin(), hypotheses_.end(),
                   [&](const Pose& a, const Pose& b) { return gap(a) < gap(b); });
  if (static_cast<int>(hypotheses_.size()) > kMaxHypotheses) hypotheses_.resize(kMaxHypotheses);
}

void Perception::learn_colors(const std::vector<Cell>& anchors) {
  const Pose me = pose();
  for (int j = 0; j < static_cast<int>(anchors.size()) && j < static_cast<int>(seat_color_.size()); ++j) {
    if (j == ctx_.seat) continue;
    int r = 0, c = 0;
    if (!view_position(me.position, me.facing, anchors[j], r, c)) continue;
    const TileCode& t = tiles_[r * kViewSize + c];
    if (t.has_avatar()) seat_color_[j] = t.avatar_color;
  }
}

void Perception::scan_world() {
  avatars_.clear();
  beam_cells_.clear();
  newly_frozen_.clear();
  if (!localized()) return;
  const Pose me = pose();
  const GameMap& map = *ctx_.map;
  const auto& pads = map.fuel_pads();
  for (int r = 0; r < kViewSize; ++r) {
    for (int c = 0; c < kViewSize; ++c) {
      const TileCode& t = tiles_[r * kViewSize + c];
      const Cell w = view_cell(me.position, me.facing, r, c);
      if (t.beam) beam_cells_.push_back(w);
      if (t.terrain == Terrain::kPadFull || t.terrain == Terrain::kPadEmpty) {
        const auto it = std::find(pads.begin(), pads.end(), w);
        if (it != pads.end()) {
          int& ready = pad_ready_at_[it - pads.begin()];
          if (t.terrain == Terrain::kPadFull) {
            ready = 0;
          } else {
            const int bound = time_ + ctx_.config.fuel_respawn_delay;
            ready = ready <= time_ ? bound : std::min(ready, bound);
          }
        }
      }
      if (!t.has_avatar() || (r == kObserverRow && c == kObserverCol)) continue;
      SeenAvatar a;
      a.cell = w;
      a.color = t.avatar_color;
      a.seat = seat_of_color(a.color);
      a.frozen = t.frozen;
      a.facing = rotate(t.facing, me.facing);
      if (a.frozen && a.color < static_cast<int>(color_frozen_.size()) && !color_frozen_[a.color]) {
        color_frozen_[a.color] = true;
        newly_frozen_.push_back(a.color);
      }
      avatars_.push_back(a);
    }
  }
}

void Perception::observe(const ObservationBundle& obs) {
  ++time_;
  obs_ = &obs;
  tiles_ = decode_tiles(obs.rgb, kViewSize, kViewSize);
  const TileCode& own = tiles_[kObserverRow * kViewSize + kObserverCol];
  const GameMap& map = *ctx_.map;

  if (own.terrain == Terrain::kJail) {
    jailed_ = true;
    voting_ = false;
    voting_step_ = 0;
    hypotheses_ = {{map.jail_cells()[ctx_.seat], Direction::kNorth}};
    scan_world();
    return;
  }
  frozen_ = own.frozen;

  if (own.terrain == Terrain::kVotingSlot) {
    if (!voting_) {
      pre_vote_ = predict();
      voting_ = true;
      voting_step_ = 0;
    }
    ++voting_step_;
    hypotheses_ = {{map.voting_slots()[ctx_.seat], Direction::kNorth}};
    learn_colors(map.voting_slots());
    scan_world();
    return;
  }

  std::vector<Pose> candidates;
  if (time_ == 0) {
    candidates = {{map.spawn_points()[ctx_.seat], Direction::kNorth}};
  } else if (voting_) {
    voting_ = false;
    voting_step_ = 0;
    candidates = pre_vote_;
  } else {
    candidates = predict();
  }
  hypotheses_.clear();
  for (const Pose& p : candidates) {
    if (matches(p)) hypotheses_.push_back(p);
    if (static_cast<int>(hypotheses_.size()) >= kMaxHypotheses) break;
  }
  const bool tracked = !hypotheses_.empty();
  if (!tracked) relocalize(candidates.empty() ? map.spawn_points()[ctx_.seat] : candidates.front().position);
  if (time_ == 0 && tracked) learn_colors(map.spawn_points());
  scan_world();
}

int Perception::seat_of_color(int color) const {
  for (int s = 0; s < static_cast<int>(seat_color_.size()); ++s) {
    if (seat_color_[s] == color && color >= 0) return s;
  }
  return -1;
}

std::optional<SeenAvatar> Perception::seen_seat(int seat) const {
  const int color = seat_color_[seat];
  if (color < 0) return std::nullopt;
  for (const auto& a : avatars_) {
    if (a.color == color) return a;
  }
  return std::nullopt;
}

int Perception::inventory() const {
  return static_cast<int>(std::lround(obs_->inventory_fraction * ctx_.config.inventory_capacity));
}

int Perception::progress() const {
  return static_cast<int>(std::lround(obs_->progress_fraction * ctx_.config.fuel_goal));
}

bool Perception::pad_in_view(int pad) const {
  if (!localized()) return false;
  const Pose me = pose();
  return in_view(me.position, me.facing, ctx_.map->fuel_pads()[pad]);
}

std::optional<Terrain> Perception::visible_terrain(Cell c) const {
  if (!localized()) return std::nullopt;
  const Pose me = pose();
  int r = 0, col = 0;
  if (!view_position(me.position, me.facing, c, r, col)) return std::nullopt;
  return tiles_[r * kViewSize + col].terrain;
}

Navigator::Navigator(std::shared_ptr<const GameMap> map) : map_(std::move(map)) {}

const std::vector<int>& Navigator::field(const std::vector<Cell>& targets) {
  auto it = cache_.find(targets);
  if (it != cache_.end()) return it->second;
  if (cache_.size() > 512) cache_.clear();
  const GameMap& map = *map_;
  std::vector<int> dist(static_cast<std::size_t>(map.width()) * map.height(), kUnreachable);
  std::deque<Cell> queue;
  for (Cell t : targets) {
    if (!map.walkable(t)) continue;
    dist[map.index(t)] = 0;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    const int next = dist[map.index(c)] + 1;
    for (int d = 0; d < 4; ++d) {
      const Cell n = c + forward_vector(static_cast<Direction>(d));
      if (!map.walkable(n) || dist[map.index(n)] <= next) continue;
      dist[map.index(n)] = next;
      queue.push_back(n);
    }
  }
  return cache_.emplace(targets, std::move(dist)).first->second;
}

std::optional<Direction> Navigator::descend(const std::vector<int>& field, Cell from,
                                            const std::vector<Cell>& blocked, Direction prefer) const {
  const GameMap& map = *map_;
  if (!map.walkable(from)) return std::nullopt;
  const int here = field[map.index(from)];
  const Direction order[] = {prefer, Direction::kNorth, Direction::kEast, Direction::kSouth,
                             Direction::kWest};
  for (Direction d : order) {
    const Cell n = from + forward_vector(d);
    if (!map.walkable(n) || field[map.index(n)] >= here) continue;
    if (std::find(blocked.begin(), blocked.end(), n) != blocked.end()) continue;
    return d;
  }
  return std::nullopt;
}

}  // namespace hidden_agenda
