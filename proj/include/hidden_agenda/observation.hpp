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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hidden_agenda/view_window.hpp"
#include "hidden_agenda/world.hpp"

namespace hidden_agenda {

inline constexpr int kSpritePixels = 8;
inline constexpr int kObsHeight = kViewSize * kSpritePixels;  // 88
inline constexpr int kObsWidth = kViewSize * kSpritePixels;   // 88
inline constexpr int kObsChannels = 3;
inline constexpr int kObsBytes = kObsHeight * kObsWidth * kObsChannels;

// Terrain layer of a rendered tile. Values are the sprite-sheet indices.
enum class Terrain : std::uint8_t {
  kVoid = 0,
  kFloor = 1,
  kWall = 2,
  kPadFull = 3,
  kPadEmpty = 4,
  kGrate = 5,
  kDeliberation = 6,
  kVotingSlot = 7,
  kJail = 8,
};
inline constexpr int kNumTerrains = 9;

// Everything that determines the pixels of one 8x8 tile. This is also the
// payload of the sprite-index wire mode.
struct TileCode {
  Terrain terrain = Terrain::kVoid;
  std::int8_t avatar_color = -1;  // -1: no avatar
  Direction facing = Direction::kNorth;  // relative to the viewer's "up"
  bool frozen = false;
  bool beam = false;

  bool has_avatar() const { return avatar_color >= 0; }
  friend bool operator==(const TileCode&, const TileCode&) = default;
};

struct ObservationBundle {
  std::vector<std::uint8_t> rgb;  // (88, 88, 3) row-major
  float inventory_fraction = 0.0f;
  float progress_fraction = 0.0f;
  int vote_rows = 0;
  int vote_cols = 0;
  std::vector<float> vote_matrix;  // vote_rows x vote_cols, one-hot rows

  float vote(int row, int col) const { return vote_matrix[row * vote_cols + col]; }
  // Column of the hot entry in `row`.
  int vote_column(int row) const;
};

// Sprite sheet and seat palette loaded from the bundled assets.
class SpriteSheet {
 public:
  static const SpriteSheet& builtin();
  static SpriteSheet parse(std::string_view ppm_text, std::string_view palette_text);

  using Rgb = std::array<std::uint8_t, 3>;
  static constexpr int kTileBytes = kSpritePixels * kSpritePixels * 3;

  const std::uint8_t* terrain(Terrain t) const { return terrain_[static_cast<int>(t)].data(); }
  const Rgb& player_color(int color) const { return player_colors_[color]; }
  int num_player_colors() const { return static_cast<int>(player_colors_.size()); }

  // Paints one tile into an image with the given row stride (bytes).
  void paint(const TileCode& tile, std::uint8_t* origin, std::size_t stride) const;
  // Inverse of paint() for tiles produced by this sheet.
  TileCode decode(const std::uint8_t* origin, std::size_t stride) const;

 private:
  std::vector<std::array<std::uint8_t, kTileBytes>> terrain_;
  // Per color and facing: premultiplied avatar pixels plus a coverage mask.
  std::vector<std::array<std::array<std::uint8_t, kTileBytes>, 4>> avatar_;
  std::array<std::array<bool, 64>, 4> avatar_mask_{};
  std::array<bool, 64> frozen_mask_{};
  std::array<bool, 64> beam_mask_{};
  Rgb ice_{};
  Rgb beam_{};
  Rgb visor_{};
  std::vector<Rgb> player_colors_;
  std::array<Rgb, kNumTerrains> terrain_probe_{};
};

Terrain terrain_of(const WorldState& state, Cell c);

// 121 tile codes of a player's egocentric window, in render order.
std::array<TileCode, kViewCells> view_tiles(const WorldState& state, int player);
// Paints tile codes (row-major grid of `cols` columns) into an RGB buffer.
void paint_tiles(std::span<const TileCode> tiles, int cols, std::span<std::uint8_t> rgb);
std::vector<TileCode> decode_tiles(std::span<const std::uint8_t> rgb, int rows, int cols);

void render_rgb(const WorldState& state, int player, std::span<std::uint8_t> out);
std::vector<std::uint8_t> render_rgb(const WorldState& state, int player);

// n x (n+2) one-hot rows: target seat, abstain (n), inactive (n+1).
std::vector<float> vote_matrix(const WorldState& state);

ObservationBundle observe(const WorldState& state, int player);
std::vector<ObservationBundle> observe_all(const WorldState& state);

struct SpectatorPlayer {
  int seat = 0;
  int color = 0;
  Status status = Status::kActive;
  Cell position;
  Direction orientation = Direction::kNorth;
  int inventory = 0;
};

struct SpectatorOverlay {
  double progress_fraction = 0.0;
  int progress = 0;
  int fuel_goal = 0;
  Phase phase = Phase::kSituation;
  int situation_clock = 0;
  int voting_clock = 0;
  int episode_clock = 0;
  std::vector<SpectatorPlayer> players;
  std::vector<float> vote_matrix;
};

struct SpectatorFrame {
  int height = 0;  // map height * 8
  int width = 0;   // map width * 8
  std::vector<std::uint8_t> rgb;
  std::vector<TileCode> tiles;  // map-sized grid, north up
  SpectatorOverlay overlay;
};

SpectatorFrame spectator_frame(const WorldState& state);

// FNV-1a over a byte buffer; used for golden image digests.
std::uint64_t bytes_digest(std::span<const std::uint8_t> bytes);

}  // namespace hidden_agenda
