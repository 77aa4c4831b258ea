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

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hidden_agenda/types.hpp"

namespace hidden_agenda {

enum class CellKind : std::uint8_t {
  kWall = 0,
  kFloor,
  kFuelPad,
  kGrate,
  kDeliberation,
  kVotingSlot,
  kJail,
  kSpawn,
};

// Static layout of a level. Immutable once loaded and shared between
// world states.
//
// Text format, one character per cell:
//   '#' wall        '.' floor          'F' fuel pad     'G' grate
//   ',' deliberation floor             'J' jail cell
//   '0'-'4' spawn point of that seat   '5'-'9' voting slot of seat (digit - 5)
// Spawn points and voting slots are walkable floor otherwise.
class GameMap {
 public:
  static GameMap parse(std::string_view text, std::string name = "inline");

  const std::string& name() const { return name_; }
  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  CellKind at(Cell c) const { return kinds_[index(c)]; }
  // Out-of-bounds cells count as walls.
  bool is_wall(Cell c) const { return !in_bounds(c) || at(c) == CellKind::kWall; }
  bool walkable(Cell c) const { return !is_wall(c); }
  int index(Cell c) const { return c.y * width_ + c.x; }
  Cell cell_at(int index) const { return {index % width_, index / width_}; }

  const std::vector<Cell>& fuel_pads() const { return fuel_pads_; }
  const std::vector<Cell>& grates() const { return grates_; }
  const std::vector<Cell>& jail_cells() const { return jail_cells_; }
  // Indexed by seat.
  const std::vector<Cell>& spawn_points() const { return spawns_; }
  const std::vector<Cell>& voting_slots() const { return voting_slots_; }

  bool in_deliberation_area(Cell c) const {
    if (!in_bounds(c)) return false;
    CellKind k = at(c);
    return k == CellKind::kDeliberation || k == CellKind::kVotingSlot || k == CellKind::kJail;
  }

  // Checks the layout against a player count: matching spawn/slot/jail
  // counts, pads in corner quadrants, grates in the central region.
  void validate_for(int num_players) const;

  // Text form of the map, suitable for parse().
  std::string to_text() const;

 private:
  std::string name_;
  int width_ = 0;
  int height_ = 0;
  std::vector<CellKind> kinds_;
  std::vector<Cell> fuel_pads_;
  std::vector<Cell> grates_;
  std::vector<Cell> jail_cells_;
  std::vector<Cell> spawns_;
  std::vector<Cell> voting_slots_;
};

// Resolves a map by name: built-in assets first ("canonical"), then a path
// to a map text file. Throws MapError when neither exists.
std::shared_ptr<const GameMap> resolve_map(const std::string& name);

}  // namespace hidden_agenda
