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

#include <cmath>
#include <cstdio>
#include <set>

#include "gtest/gtest.h"
#include "hidden_agenda/engine.hpp"
#include "hidden_agenda/observation.hpp"
#include "hidden_agenda/privileged.hpp"
#include "hidden_agenda/rules.hpp"
#include "support/scenario.hpp"

namespace hidden_agenda {
namespace {

using testing::noops;
using testing::park_all;
using testing::put;
using testing::scenario;

// Pinned digests of fixture renders. Regenerate with HA_PRINT_DIGESTS=1.
constexpr std::uint64_t kGoldenViewDigest = 0x45481f7d6fe8c819ULL;
constexpr std::uint64_t kGoldenSpectatorDigest = 0xfe584cc3a0f4f81fULL;

WorldState fixture() {
  WorldState s = scenario(0, 11);
  park_all(s);
  put(s, 0, {20, 14}, Direction::kWest);
  put(s, 1, {19, 14}, Direction::kEast);
  put(s, 2, {23, 14}, Direction::kEast);
  put(s, 3, {17, 17}, Direction::kSouth);
  s.players[3].inventory = 1;
  auto acts = noops();
  acts[0] = PlayerAction::fire();
  step(s, acts);
  return s;
}

// Prints the digest and writes the image as PPM when HA_PRINT_DIGESTS is set.
void maybe_print(const char* name, const std::vector<std::uint8_t>& rgb, int h, int w) {
  if (!std::getenv("HA_PRINT_DIGESTS")) return;
  std::printf("%s = 0x%016llxULL\n", name, static_cast<unsigned long long>(bytes_digest(rgb)));
  if (FILE* f = std::fopen((std::string(name) + ".ppm").c_str(), "wb")) {
    std::fprintf(f, "P6\n%d %d\n255\n", w, h);
    std::fwrite(rgb.data(), 1, rgb.size(), f);
    std::fclose(f);
  }
}

TEST(Observation, ShapesAndScalars) {
  WorldState s = scenario(0);
  s.players[1].inventory = 1;
  s.progress = 8;
  const ObservationBundle ob = observe(s, 1);
  EXPECT_EQ(ob.rgb.size(), static_cast<std::size_t>(88 * 88 * 3));
  EXPECT_EQ(ob.vote_rows, 5);
  EXPECT_EQ(ob.vote_cols, 7);
  EXPECT_FLOAT_EQ(ob.inventory_fraction, 0.5f);
  EXPECT_FLOAT_EQ(ob.progress_fraction, 0.25f);
}

TEST(Observation, VoteMatrixOutsideVoting) {
  WorldState s = scenario(0);
  auto m = vote_matrix(s);
  for (int r = 0; r < 5; ++r) EXPECT_EQ(m[r * 7 + 5], 1.0f);
  s.players[3].status = Status::kJailed;
  s.vote_ledger[3] = Vote::inactive();
  m = vote_matrix(s);
  EXPECT_EQ(m[3 * 7 + 6], 1.0f);
  for (int r = 0; r < 5; ++r) {
    float sum = 0;
    for (int c = 0; c < 7; ++c) sum += m[r * 7 + c];
    EXPECT_EQ(sum, 1.0f);
  }
}

TEST(Observation, VoteMatrixLagsOneStep) {
  WorldState s = scenario(0);
  StepOutcome out{std::vector<double>(5, 0.0), {}, {}};
  rules::begin_voting(s, VotingTrigger::kTimer, out);
  // What players see on the first voting step: everyone abstaining.
  ObservationBundle ob = observe(s, 0);
  for (int r = 0; r < 5; ++r) EXPECT_EQ(ob.vote_column(r), 5);
  auto acts = noops();
  acts[1] = PlayerAction::vote_for(2);
  step(s, acts);
  ob = observe(s, 0);
  EXPECT_EQ(ob.vote_column(1), 2);
  acts[1] = PlayerAction::vote_for(4);
  step(s, acts);
  EXPECT_EQ(observe(s, 0).vote_column(1), 4);
}

TEST(Observation, RandomStatesRowsSumToOne) {
  CounterRng pick(99);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 10000; ++seed) {
    WorldState s = reset(GameConfig{}, seed);
    while (!s.terminal && checked < 10000) {
      std::vector<PlayerAction> acts;
      for (int i = 0; i < 5; ++i) acts.push_back(PlayerAction::from_id(pick.below(14), 5));
      step(s, acts);
      const auto m = vote_matrix(s);
      for (int r = 0; r < 5; ++r) {
        float sum = 0;
        for (int c = 0; c < 7; ++c) sum += m[r * 7 + c];
        ASSERT_EQ(sum, 1.0f);
      }
      const int p = static_cast<int>(pick.below(5));
      const float f = s.players[p].inventory / 2.0f;
      ASSERT_TRUE(f == 0.0f || f == 0.5f || f == 1.0f);
      ++checked;
    }
  }
}

TEST(View, WindowGeometry) {
  // Facing east from (20,14): one row ahead is x = 21; column 6 is south.
  EXPECT_EQ(view_cell({20, 14}, Direction::kEast, 8, 5), (Cell{21, 14}));
  EXPECT_EQ(view_cell({20, 14}, Direction::kEast, 9, 6), (Cell{20, 15}));
  EXPECT_EQ(view_cell({20, 14}, Direction::kEast, 10, 5), (Cell{19, 14}));
  EXPECT_EQ(view_cell({20, 14}, Direction::kNorth, 0, 0), (Cell{15, 5}));
  const auto cells = view_window({20, 14}, Direction::kSouth);
  std::set<Cell> unique(cells.begin(), cells.end());
  EXPECT_EQ(unique.size(), 121u);
  for (Cell c : cells) EXPECT_TRUE(in_view({20, 14}, Direction::kSouth, c));
  EXPECT_FALSE(in_view({20, 14}, Direction::kSouth, {20, 12}));
  EXPECT_TRUE(in_view({20, 14}, Direction::kSouth, {20, 13}));
  EXPECT_TRUE(in_view({20, 14}, Direction::kSouth, {20, 23}));
  EXPECT_FALSE(in_view({20, 14}, Direction::kSouth, {20, 24}));
}

TEST(View, TilesShowAvatarsRelativeToViewer) {
  WorldState s = scenario(0);
  park_all(s);
  put(s, 1, {20, 14}, Direction::kEast);
  put(s, 2, {22, 14}, Direction::kNorth);
  const auto tiles = view_tiles(s, 1);
  const TileCode self = tiles[9 * 11 + 5];
  EXPECT_EQ(self.avatar_color, s.players[1].color);
  EXPECT_EQ(self.facing, Direction::kNorth);
  const TileCode other = tiles[7 * 11 + 5];
  EXPECT_EQ(other.avatar_color, s.players[2].color);
  // North seen by an east-facing viewer points left.
  EXPECT_EQ(other.facing, Direction::kWest);
}

TEST(Render, PaintDecodeRoundTripForEveryTileCode) {
  std::vector<TileCode> tiles;
  for (int t = 0; t < kNumTerrains; ++t) {
    for (int color = -1; color < 5; ++color) {
      for (int d = 0; d < 4; ++d) {
        for (int fz = 0; fz < 2; ++fz) {
          for (int bm = 0; bm < 2; ++bm) {
            TileCode tc;
            tc.terrain = static_cast<Terrain>(t);
            tc.avatar_color = static_cast<std::int8_t>(color);
            tc.facing = color < 0 ? Direction::kNorth : static_cast<Direction>(d);
            tc.frozen = color >= 0 && fz;
            tc.beam = bm;
            tiles.push_back(tc);
          }
        }
      }
    }
  }
  const int cols = 16;
  while (tiles.size() % cols) tiles.push_back(TileCode{});
  const int rows = static_cast<int>(tiles.size()) / cols;
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(rows) * cols * 64 * 3);
  paint_tiles(tiles, cols, rgb);
  EXPECT_EQ(decode_tiles(rgb, rows, cols), tiles);
}

TEST(Render, IsPureAndDeterministic) {
  const WorldState s = fixture();
  const WorldState copy = s;
  const auto a = render_rgb(s, 2);
  const auto b = render_rgb(s, 2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(s, copy);
  const auto tiles = view_tiles(s, 2);
  EXPECT_EQ(decode_tiles(a, 11, 11), std::vector<TileCode>(tiles.begin(), tiles.end()));
}

TEST(Render, OneCellIslandIsBlackExceptObserver) {
  WorldState s;
  s.config.num_players = 1;
  s.map = std::make_shared<const GameMap>(GameMap::parse(".\n"));
  s.players.resize(1);
  s.players[0].position = {0, 0};
  s.occupancy.assign(1, 0);
  s.vote_ledger.assign(1, Vote::abstain());
  const auto rgb = render_rgb(s, 0);
  for (int y = 0; y < 88; ++y) {
    for (int x = 0; x < 88; ++x) {
      const bool observer = y / 8 == 9 && x / 8 == 5;
      if (observer) continue;
      for (int ch = 0; ch < 3; ++ch) ASSERT_EQ(rgb[(y * 88 + x) * 3 + ch], 0) << x << "," << y;
    }
  }
  bool lit = false;
  for (int y = 72; y < 80; ++y)
    for (int x = 40; x < 48; ++x) lit = lit || rgb[(y * 88 + x) * 3] || rgb[(y * 88 + x) * 3 + 1];
  EXPECT_TRUE(lit);
}

TEST(Render, GoldenDigests) {
  const WorldState s = fixture();
  const auto view = render_rgb(s, 0);
  const SpectatorFrame frame = spectator_frame(s);
  maybe_print("kGoldenViewDigest", view, 88, 88);
  maybe_print("kGoldenSpectatorDigest", frame.rgb, frame.height, frame.width);
  EXPECT_EQ(bytes_digest(view), kGoldenViewDigest);
  EXPECT_EQ(bytes_digest(frame.rgb), kGoldenSpectatorDigest);
}

TEST(Spectator, ShapeAndOverlay) {
  WorldState s = scenario(0);
  s.progress = 12;
  const SpectatorFrame f = spectator_frame(s);
  EXPECT_EQ(f.height, 248);
  EXPECT_EQ(f.width, 320);
  EXPECT_EQ(f.rgb.size(), static_cast<std::size_t>(248 * 320 * 3));
  EXPECT_DOUBLE_EQ(f.overlay.progress_fraction, 12.0 / 32.0);
  EXPECT_EQ(f.overlay.players.size(), 5u);
  EXPECT_EQ(decode_tiles(f.rgb, 31, 40), f.tiles);
}

TEST(Privileged, IdentityAndDistances) {
  WorldState s = scenario(2);
  park_all(s);
  put(s, 0, {10, 10});
  put(s, 1, {13, 14});
  const PrivilegedInfo info = privileged_info(s, 0);
  EXPECT_EQ(info.identity, (std::vector<float>{0, 0, 1, 0, 0}));
  EXPECT_FLOAT_EQ(info.distances[0], 0.0f);
  EXPECT_FLOAT_EQ(info.distances[1], 5.0f);
}

}  // namespace
}  // namespace hidden_agenda
