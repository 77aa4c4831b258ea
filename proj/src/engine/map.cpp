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

#include "hidden_agenda/map.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <fstream>
#include <sstream>

namespace hidden_agenda {

namespace assets {
extern const std::string_view kCanonicalMapText;
}  // namespace assets

GameMap GameMap::parse(std::string_view text, std::string name) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  if (rows.empty()) throw MapError("map '" + name + "' is empty");
  const int width = static_cast<int>(rows.front().size());
  for (std::size_t y = 0; y < rows.size(); ++y) {
    if (static_cast<int>(rows[y].size()) != width) {
      throw MapError("map '" + name + "': row " + std::to_string(y) + " has length " +
                     std::to_string(rows[y].size()) + ", expected " + std::to_string(width));
    }
  }

  GameMap map;
  map.name_ = std::move(name);
  map.width_ = width;
  map.height_ = static_cast<int>(rows.size());
  map.kinds_.resize(static_cast<std::size_t>(map.width_) * map.height_);
  std::vector<std::optional<Cell>> spawns(5), slots(5);

  for (int y = 0; y < map.height_; ++y) {
    for (int x = 0; x < map.width_; ++x) {
      const char ch = rows[y][x];
      const Cell c{x, y};
      CellKind kind;
      switch (ch) {
        case '#': kind = CellKind::kWall; break;
        case '.': kind = CellKind::kFloor; break;
        case 'F': kind = CellKind::kFuelPad; map.fuel_pads_.push_back(c); break;
        case 'G': kind = CellKind::kGrate; map.grates_.push_back(c); break;
        case ',': kind = CellKind::kDeliberation; break;
        case 'J': kind = CellKind::kJail; map.jail_cells_.push_back(c); break;
        default:
          if (ch >= '0' && ch <= '4') {
            kind = CellKind::kSpawn;
            auto& slot = spawns[ch - '0'];
            if (slot) throw MapError("map '" + map.name_ + "': duplicate spawn '" + ch + "'");
            slot = c;
          } else if (ch >= '5' && ch <= '9') {
            kind = CellKind::kVotingSlot;
            auto& slot = slots[ch - '5'];
            if (slot) throw MapError("map '" + map.name_ + "': duplicate voting slot '" + ch + "'");
            slot = c;
          } else {
            throw MapError("map '" + map.name_ + "': unknown cell character '" +
                           std::string(1, ch) + "' at (" + std::to_string(x) + "," +
                           std::to_string(y) + ")");
          }
      }
      map.kinds_[map.index(c)] = kind;
    }
  }
  // Seats must be numbered contiguously from 0.
  for (int i = 0; i < 5; ++i) {
    if (spawns[i]) {
      if (static_cast<int>(map.spawns_.size()) != i) {
        throw MapError("map '" + map.name_ + "': spawn digits must be contiguous from 0");
      }
      map.spawns_.push_back(*spawns[i]);
    }
    if (slots[i]) {
      if (static_cast<int>(map.voting_slots_.size()) != i) {
        throw MapError("map '" + map.name_ + "': voting slot digits must be contiguous from 5");
      }
      map.voting_slots_.push_back(*slots[i]);
    }
  }
  return map;
}

void GameMap::validate_for(int num_players) const {
  auto fail = [&](const std::string& what) { throw MapError("map '" + name_ + "': " + what); };
  if (static_cast<int>(spawns_.size()) != num_players) {
    fail("expected " + std::to_string(num_players) + " spawn points, found " +
         std::to_string(spawns_.size()));
  }
  if (static_cast<int>(voting_slots_.size()) != num_players) {
    fail("expected " + std::to_string(num_players) + " voting slots, found " +
         std::to_string(voting_slots_.size()));
  }
  if (static_cast<int>(jail_cells_.size()) != num_players) {
    fail("expected " + std::to_string(num_players) + " jail cells, found " +
         std::to_string(jail_cells_.size()));
  }
  if (fuel_pads_.empty()) fail("no fuel pads");
  if (grates_.empty()) fail("no grate cells");

  auto in_corner = [&](Cell c) {
    const bool side_x = c.x < width_ / 3 || c.x >= width_ - width_ / 3;
    const bool side_y = c.y < height_ / 3 || c.y >= height_ - height_ / 3;
    return side_x && side_y;
  };
  auto in_center = [&](Cell c) {
    return c.x >= width_ / 3 && c.x < width_ - width_ / 3 && c.y >= height_ / 3 &&
           c.y < height_ - height_ / 3;
  };
  for (Cell c : fuel_pads_) {
    if (!in_corner(c)) fail("fuel pad outside the corner rooms");
  }
  for (Cell c : grates_) {
    if (!in_center(c)) fail("grate outside the central room");
  }

  // The deliberation area must be a sealed region: flood from the first
  // voting slot and require it to hold every slot and jail cell and nothing
  // reachable during play.
  std::vector<char> seen(kinds_.size(), 0);
  std::vector<Cell> stack = {voting_slots_.front()};
  seen[index(voting_slots_.front())] = 1;
  int slots_found = 0, jails_found = 0;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    const CellKind k = at(c);
    if (k == CellKind::kVotingSlot) ++slots_found;
    if (k == CellKind::kJail) ++jails_found;
    if (k != CellKind::kDeliberation && k != CellKind::kVotingSlot && k != CellKind::kJail) {
      fail("deliberation room is not sealed from the play area");
    }
    for (Cell d : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
      const Cell n = c + d;
      if (walkable(n) && !seen[index(n)]) {
        seen[index(n)] = 1;
        stack.push_back(n);
      }
    }
  }
  if (slots_found != num_players || jails_found != num_players) {
    fail("voting slots and jail cells must share one deliberation room");
  }
}

std::string GameMap::to_text() const {
  std::string out;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const Cell c{x, y};
      char ch = '?';
      switch (at(c)) {
        case CellKind::kWall: ch = '#'; break;
        case CellKind::kFloor: ch = '.'; break;
        case CellKind::kFuelPad: ch = 'F'; break;
        case CellKind::kGrate: ch = 'G'; break;
        case CellKind::kDeliberation: ch = ','; break;
        case CellKind::kJail: ch = 'J'; break;
        case CellKind::kSpawn: {
          const auto it = std::find(spawns_.begin(), spawns_.end(), c);
          ch = static_cast<char>('0' + (it - spawns_.begin()));
          break;
        }
        case CellKind::kVotingSlot: {
          const auto it = std::find(voting_slots_.begin(), voting_slots_.end(), c);
          ch = static_cast<char>('5' + (it - voting_slots_.begin()));
          break;
        }
      }
      out += ch;
    }
    out += '\n';
  }
  return out;
}

std::shared_ptr<const GameMap> resolve_map(const std::string& name) {
  if (name == "canonical") {
    static const auto canonical =
        std::make_shared<const GameMap>(GameMap::parse(assets::kCanonicalMapText, "canonical"));
    return canonical;
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(name, ec)) {
    std::ifstream in(name);
    std::stringstream buf;
    buf << in.rdbuf();
    return std::make_shared<const GameMap>(GameMap::parse(buf.str(), name));
  }
  throw MapError("unknown map '" + name + "'");
}

}  // namespace hidden_agenda
