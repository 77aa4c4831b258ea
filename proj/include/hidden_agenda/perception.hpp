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

// Observation-only world model used by the scripted policies: self
// localization against the static map, avatar tracking, pad knowledge and
// shortest-path navigation.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hidden_agenda/agents.hpp"

namespace hidden_agenda {

struct Pose {
  Cell position;
  Direction facing = Direction::kNorth;
  friend bool operator==(const Pose&, const Pose&) = default;
};

struct SeenAvatar {
  Cell cell;
  int color = -1;
  int seat = -1;  // -1 until the color is matched to a seat
  bool frozen = false;
  Direction facing = Direction::kNorth;  // world frame
};

class Perception {
 public:
  explicit Perception(const PolicyContext& context);

  // Consumes the next observation. Must be followed by commit() with the
  // action taken.
  void observe(const ObservationBundle& obs);
  void commit(const PlayerAction& action) { last_action_ = action; }

  int time() const { return time_; }
  bool voting() const { return voting_; }
  int voting_step() const { return voting_step_; }  // 1 on the first voting step
  bool frozen() const { return frozen_; }
  bool jailed() const { return jailed_; }
  bool inactive() const { return frozen_ || jailed_; }

  bool localized() const { return !hypotheses_.empty(); }
  const std::vector<Pose>& hypotheses() const { return hypotheses_; }
  Cell position() const { return pose().position; }
  Direction facing() const { return pose().facing; }
  Pose pose() const;

  const std::vector<TileCode>& tiles() const { return tiles_; }
  const std::vector<SeenAvatar>& avatars() const { return avatars_; }
  const std::vector<Cell>& beam_cells() const { return beam_cells_; }
  // Colors seen frozen in this observation but not before.
  const std::vector<int>& newly_frozen() const { return newly_frozen_; }
  const ObservationBundle& observation() const { return *obs_; }

  int seat_of_color(int color) const;
  int color_of_seat(int seat) const { return seat_color_[seat]; }
  std::optional<SeenAvatar> seen_seat(int seat) const;

  int inventory() const;
  int progress() const;
  // Pads not known to be respawning at the current time.
  bool pad_available(int pad) const { return pad_ready_at_[pad] <= time_; }
  bool pad_in_view(int pad) const;

  // Terrain of `c` as shown in the latest view, if it is inside the window.
  std::optional<Terrain> visible_terrain(Cell c) const;

 private:
  bool matches(const Pose& pose) const;
  std::vector<Pose> predict() const;
  void relocalize(Cell near);
  void learn_colors(const std::vector<Cell>& anchors);
  void scan_world();

  PolicyContext ctx_;
  std::vector<Terrain> static_terrain_;  // kPadFull stands for either pad state
  int time_ = -1;
  const ObservationBundle* obs_ = nullptr;
  std::vector<TileCode> tiles_;
  PlayerAction last_action_;
  std::vector<Pose> hypotheses_;
  std::vector<Pose> pre_vote_;
  bool voting_ = false;
  int voting_step_ = 0;
  bool frozen_ = false;
  bool jailed_ = false;
  std::vector<int> seat_color_;
  std::vector<bool> color_frozen_;
  std::vector<SeenAvatar> avatars_;
  std::vector<Cell> beam_cells_;
  std::vector<int> newly_frozen_;
  std::vector<int> pad_ready_at_;
};

// Breadth-first distance fields on the static map, cached per target set.
class Navigator {
 public:
  static constexpr int kUnreachable = 1 << 29;

  explicit Navigator(std::shared_ptr<const GameMap> map);

  const std::vector<int>& field(const std::vector<Cell>& targets);
  const std::vector<int>& field(Cell target) { return field(std::vector<Cell>{target}); }
  int distance(Cell from, Cell to) { return field(to)[map_->index(from)]; }

  // Direction of a neighbor strictly closer on `field`, skipping `blocked`
  // cells and preferring `prefer`.
  std::optional<Direction> descend(const std::vector<int>& field, Cell from,
                                   const std::vector<Cell>& blocked, Direction prefer) const;

  const GameMap& map() const { return *map_; }

 private:
  std::shared_ptr<const GameMap> map_;
  std::map<std::vector<Cell>, std::vector<int>> cache_;
};

}  // namespace hidden_agenda
