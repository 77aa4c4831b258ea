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

#include "hidden_agenda/observation.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace hidden_agenda {

namespace assets {
extern const std::string_view kSpriteSheetText;
extern const std::string_view kPaletteText;
}  // namespace assets

namespace {

constexpr int kTileAvatar = 9;
constexpr int kTileFrozen = 10;
constexpr int kTileBeam = 11;
constexpr int kSheetTiles = 12;

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;
  const std::uint8_t* px(int x, int y) const { return &rgb[(static_cast<std::size_t>(y) * width + x) * 3]; }
};

Image parse_p3(std::string_view text) {
  std::vector<int> values;
  std::istringstream in{std::string(text)};
  std::string line;
  bool magic = false;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      if (!magic) {
        if (tok != "P3") throw std::runtime_error("sprite sheet: expected P3 image");
        magic = true;
        continue;
      }
      values.push_back(std::stoi(tok));
    }
  }
  if (values.size() < 3) throw std::runtime_error("sprite sheet: truncated header");
  Image img;
  img.width = values[0];
  img.height = values[1];
  const std::size_t expected = static_cast<std::size_t>(img.width) * img.height * 3;
  if (values.size() - 3 != expected) throw std::runtime_error("sprite sheet: pixel count mismatch");
  img.rgb.reserve(expected);
  for (std::size_t i = 3; i < values.size(); ++i) img.rgb.push_back(static_cast<std::uint8_t>(values[i]));
  return img;
}

using Rgb = SpriteSheet::Rgb;

std::vector<std::pair<std::string, Rgb>> parse_palette(std::string_view text) {
  std::vector<std::pair<std::string, Rgb>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string key, name;
    int r, g, b;
    if (!(fields >> key)) continue;
    if (!(fields >> name >> r >> g >> b)) throw std::runtime_error("palette: malformed line: " + line);
    out.push_back({key, Rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                            static_cast<std::uint8_t>(b)}});
  }
  return out;
}

Rgb lookup(const std::vector<std::pair<std::string, Rgb>>& palette, std::string_view key) {
  for (const auto& [k, v] : palette) {
    if (k == key) return v;
  }
  throw std::runtime_error("palette: missing key '" + std::string(key) + "'");
}

Rgb pixel(const std::uint8_t* origin, std::size_t stride, int row, int col) {
  const std::uint8_t* p = origin + row * stride + col * 3;
  return {p[0], p[1], p[2]};
}

}  // namespace

int ObservationBundle::vote_column(int row) const {
  for (int c = 0; c < vote_cols; ++c) {
    if (vote(row, c) != 0.0f) return c;
  }
  return -1;
}

SpriteSheet SpriteSheet::parse(std::string_view ppm_text, std::string_view palette_text) {
  const Image img = parse_p3(ppm_text);
  if (img.height != kSpritePixels || img.width != kSpritePixels * kSheetTiles) {
    throw std::runtime_error("sprite sheet: expected 12 tiles of 8x8");
  }
  const auto palette = parse_palette(palette_text);
  SpriteSheet sheet;
  const Rgb body_key = lookup(palette, "@");
  const Rgb clear_key = lookup(palette, "-");
  sheet.ice_ = lookup(palette, "i");
  sheet.beam_ = lookup(palette, "y");
  sheet.visor_ = lookup(palette, "m");
  for (int c = 0;; ++c) {
    const std::string key = std::to_string(c);
    const auto it = std::find_if(palette.begin(), palette.end(), [&](const auto& e) { return e.first == key; });
    if (it == palette.end()) break;
    sheet.player_colors_.push_back(it->second);
  }

  auto tile_px = [&](int tile, int r, int c) {
    const std::uint8_t* p = img.px(tile * kSpritePixels + c, r);
    return Rgb{p[0], p[1], p[2]};
  };

  sheet.terrain_.resize(kNumTerrains);
  for (int t = 0; t < kNumTerrains; ++t) {
    auto& dst = sheet.terrain_[t];
    for (int r = 0; r < kSpritePixels; ++r) {
      for (int c = 0; c < kSpritePixels; ++c) {
        const Rgb v = tile_px(t, r, c);
        std::memcpy(&dst[(r * kSpritePixels + c) * 3], v.data(), 3);
      }
    }
    sheet.terrain_probe_[t] = tile_px(t, 0, 0);
  }

  // Avatar template faces up; rotate clockwise for the other facings.
  std::array<std::array<Rgb, 64>, 4> avatar_px{};
  for (int r = 0; r < kSpritePixels; ++r) {
    for (int c = 0; c < kSpritePixels; ++c) {
      const Rgb v = tile_px(kTileAvatar, r, c);
      avatar_px[0][r * 8 + c] = v;
      sheet.avatar_mask_[0][r * 8 + c] = v != clear_key;
    }
  }
  for (int f = 1; f < 4; ++f) {
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        avatar_px[f][c * 8 + (7 - r)] = avatar_px[f - 1][r * 8 + c];
        sheet.avatar_mask_[f][c * 8 + (7 - r)] = sheet.avatar_mask_[f - 1][r * 8 + c];
      }
    }
  }
  sheet.avatar_.resize(sheet.player_colors_.size());
  for (std::size_t color = 0; color < sheet.player_colors_.size(); ++color) {
    for (int f = 0; f < 4; ++f) {
      auto& dst = sheet.avatar_[color][f];
      for (int i = 0; i < 64; ++i) {
        const Rgb v = avatar_px[f][i] == body_key ? sheet.player_colors_[color] : avatar_px[f][i];
        std::memcpy(&dst[i * 3], v.data(), 3);
      }
    }
  }
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      sheet.frozen_mask_[r * 8 + c] = tile_px(kTileFrozen, r, c) != clear_key;
      sheet.beam_mask_[r * 8 + c] = tile_px(kTileBeam, r, c) != clear_key;
    }
  }
  return sheet;
}

const SpriteSheet& SpriteSheet::builtin() {
  static const SpriteSheet sheet = parse(assets::kSpriteSheetText, assets::kPaletteText);
  return sheet;
}

void SpriteSheet::paint(const TileCode& tile, std::uint8_t* origin, std::size_t stride) const {
  const auto& base = terrain_[static_cast<int>(tile.terrain)];
  for (int r = 0; r < kSpritePixels; ++r) {
    std::memcpy(origin + r * stride, &base[r * kSpritePixels * 3], kSpritePixels * 3);
  }
  auto put = [&](int i, const std::uint8_t* rgb) {
    std::memcpy(origin + (i / 8) * stride + (i % 8) * 3, rgb, 3);
  };
  if (tile.beam) {
    for (int i = 0; i < 64; ++i) {
      if (beam_mask_[i]) put(i, beam_.data());
    }
  }
  if (tile.has_avatar()) {
    const int f = static_cast<int>(tile.facing);
    const auto& av = avatar_[tile.avatar_color % avatar_.size()][f];
    for (int i = 0; i < 64; ++i) {
      if (avatar_mask_[f][i]) put(i, &av[i * 3]);
    }
    if (tile.frozen) {
      for (int i = 0; i < 64; ++i) {
        if (frozen_mask_[i]) put(i, ice_.data());
      }
    }
  }
}

TileCode SpriteSheet::decode(const std::uint8_t* origin, std::size_t stride) const {
  TileCode tile;
  const Rgb corner = pixel(origin, stride, 0, 0);
  for (int t = 0; t < kNumTerrains; ++t) {
    if (terrain_probe_[t] == corner) {
      tile.terrain = static_cast<Terrain>(t);
      break;
    }
  }
  tile.beam = pixel(origin, stride, 0, 2) == beam_;
  const Rgb center = pixel(origin, stride, 4, 4);
  for (std::size_t c = 0; c < player_colors_.size(); ++c) {
    if (player_colors_[c] == center) {
      tile.avatar_color = static_cast<std::int8_t>(c);
      break;
    }
  }
  if (tile.has_avatar()) {
    if (pixel(origin, stride, 3, 6) == visor_) tile.facing = Direction::kEast;
    else if (pixel(origin, stride, 6, 3) == visor_) tile.facing = Direction::kSouth;
    else if (pixel(origin, stride, 3, 1) == visor_) tile.facing = Direction::kWest;
    else tile.facing = Direction::kNorth;
    tile.frozen = pixel(origin, stride, 2, 2) == ice_;
  }
  return tile;
}

Terrain terrain_of(const WorldState& state, Cell c) {
  const GameMap& map = *state.map;
  if (!map.in_bounds(c)) return Terrain::kVoid;
  switch (map.at(c)) {
    case CellKind::kWall: return Terrain::kWall;
    case CellKind::kFloor:
    case CellKind::kSpawn: return Terrain::kFloor;
    case CellKind::kFuelPad: {
      const auto& pads = map.fuel_pads();
      const auto i = std::find(pads.begin(), pads.end(), c) - pads.begin();
      return state.pad_respawn[i] == 0 ? Terrain::kPadFull : Terrain::kPadEmpty;
    }
    case CellKind::kGrate: return Terrain::kGrate;
    case CellKind::kDeliberation: return Terrain::kDeliberation;
    case CellKind::kVotingSlot: return Terrain::kVotingSlot;
    case CellKind::kJail: return Terrain::kJail;
  }
  return Terrain::kVoid;
}

namespace {

TileCode tile_at(const WorldState& state, Cell c, Direction viewer_facing) {
  TileCode tile;
  tile.terrain = terrain_of(state, c);
  if (tile.terrain == Terrain::kVoid) return tile;
  const int who = state.occupant(c);
  if (who >= 0) {
    const auto& p = state.players[who];
    tile.avatar_color = static_cast<std::int8_t>(p.color);
    tile.facing = static_cast<Direction>((static_cast<int>(p.orientation) -
                                          static_cast<int>(viewer_facing) + 4) % 4);
    tile.frozen = p.status == Status::kFrozen;
  }
  if (!state.beam_cells.empty()) {
    tile.beam = std::find(state.beam_cells.begin(), state.beam_cells.end(), c) != state.beam_cells.end();
  }
  return tile;
}

}  // namespace

std::array<TileCode, kViewCells> view_tiles(const WorldState& state, int player) {
  const auto& p = state.players.at(player);
  std::array<TileCode, kViewCells> tiles;
  for (int row = 0; row < kViewSize; ++row) {
    for (int col = 0; col < kViewSize; ++col) {
      tiles[row * kViewSize + col] = tile_at(state, view_cell(p.position, p.orientation, row, col), p.orientation);
    }
  }
  return tiles;
}

void paint_tiles(std::span<const TileCode> tiles, int cols, std::span<std::uint8_t> rgb) {
  const SpriteSheet& sheet = SpriteSheet::builtin();
  const int rows = static_cast<int>(tiles.size()) / cols;
  const std::size_t stride = static_cast<std::size_t>(cols) * kSpritePixels * 3;
  if (rgb.size() != stride * rows * kSpritePixels) throw std::invalid_argument("paint_tiles: buffer size");
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      sheet.paint(tiles[r * cols + c], rgb.data() + r * kSpritePixels * stride + c * kSpritePixels * 3, stride);
    }
  }
}

std::vector<TileCode> decode_tiles(std::span<const std::uint8_t> rgb, int rows, int cols) {
  const SpriteSheet& sheet = SpriteSheet::builtin();
  const std::size_t stride = static_cast<std::size_t>(cols) * kSpritePixels * 3;
  if (rgb.size() != stride * rows * kSpritePixels) throw std::invalid_argument("decode_tiles: buffer size");
  std::vector<TileCode> tiles(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      tiles[r * cols + c] = sheet.decode(rgb.data() + r * kSpritePixels * stride + c * kSpritePixels * 3, stride);
    }
  }
  return tiles;
}

void render_rgb(const WorldState& state, int player, std::span<std::uint8_t> out) {
  const auto tiles = view_tiles(state, player);
  paint_tiles(tiles, kViewSize, out);
}

std::vector<std::uint8_t> render_rgb(const WorldState& state, int player) {
  std::vector<std::uint8_t> out(kObsBytes);
  render_rgb(state, player, out);
  return out;
}

std::vector<float> vote_matrix(const WorldState& state) {
  const int n = state.num_players();
  const int cols = n + 2;
  std::vector<float> m(static_cast<std::size_t>(n) * cols, 0.0f);
  for (int p = 0; p < n; ++p) {
    int col;
    if (!state.players[p].active()) {
      col = n + 1;
    } else if (state.phase == Phase::kVoting) {
      col = state.vote_ledger[p].column(n);
    } else {
      col = n;
    }
    m[p * cols + col] = 1.0f;
  }
  return m;
}

ObservationBundle observe(const WorldState& state, int player) {
  ObservationBundle b;
  b.rgb = render_rgb(state, player);
  const auto& p = state.players.at(player);
  b.inventory_fraction = static_cast<float>(p.inventory) / static_cast<float>(state.config.inventory_capacity);
  b.progress_fraction = static_cast<float>(state.progress) / static_cast<float>(state.config.fuel_goal);
  b.vote_rows = state.num_players();
  b.vote_cols = state.num_players() + 2;
  b.vote_matrix = vote_matrix(state);
  return b;
}

std::vector<ObservationBundle> observe_all(const WorldState& state) {
  std::vector<ObservationBundle> out;
  out.reserve(state.players.size());
  for (int p = 0; p < state.num_players(); ++p) out.push_back(observe(state, p));
  return out;
}

SpectatorFrame spectator_frame(const WorldState& state) {
  SpectatorFrame f;
  const GameMap& map = *state.map;
  f.height = map.height() * kSpritePixels;
  f.width = map.width() * kSpritePixels;
  f.tiles.resize(static_cast<std::size_t>(map.width()) * map.height());
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      f.tiles[y * map.width() + x] = tile_at(state, {x, y}, Direction::kNorth);
    }
  }
  f.rgb.resize(static_cast<std::size_t>(f.height) * f.width * 3);
  paint_tiles(f.tiles, map.width(), f.rgb);

  auto& o = f.overlay;
  o.progress = state.progress;
  o.fuel_goal = state.config.fuel_goal;
  o.progress_fraction = static_cast<double>(state.progress) / state.config.fuel_goal;
  o.phase = state.phase;
  o.situation_clock = state.situation_clock;
  o.voting_clock = state.voting_clock;
  o.episode_clock = state.episode_clock;
  for (const auto& p : state.players) {
    o.players.push_back({p.id, p.color, p.status, p.position, p.orientation, p.inventory});
  }
  o.vote_matrix = vote_matrix(state);
  return f;
}

std::uint64_t bytes_digest(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace hidden_agenda
