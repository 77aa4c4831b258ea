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

#include "hidden_agenda/types.hpp"

namespace hidden_agenda {

// Egocentric visibility: 5 cells to each side, 9 ahead, 1 behind. The
// observer sits at row 9, column 5 of the 11x11 render grid with its
// facing direction pointing up.
inline constexpr int kViewSize = 11;
inline constexpr int kViewLateral = 5;
inline constexpr int kViewForward = 9;
inline constexpr int kViewBackward = 1;
inline constexpr int kObserverRow = 9;
inline constexpr int kObserverCol = 5;
inline constexpr int kViewCells = kViewSize * kViewSize;

// World cell shown at (row, col) of the render grid.
inline Cell view_cell(Cell observer, Direction facing, int row, int col) {
  const Cell f = forward_vector(facing);
  const Cell r = right_vector(facing);
  const int ahead = kObserverRow - row;
  const int side = col - kObserverCol;
  return {observer.x + f.x * ahead + r.x * side, observer.y + f.y * ahead + r.y * side};
}

// All 121 cells in render order (row-major, top row first). Cells may lie
// outside the map.
std::array<Cell, kViewCells> view_window(Cell observer, Direction facing);

// Membership predicate shared by rendering and witness detection.
inline bool in_view(Cell observer, Direction facing, Cell target) {
  const Cell d = target - observer;
  const Cell f = forward_vector(facing);
  const Cell r = right_vector(facing);
  const int ahead = d.x * f.x + d.y * f.y;
  const int side = d.x * r.x + d.y * r.y;
  return ahead >= -kViewBackward && ahead <= kViewForward && side >= -kViewLateral &&
         side <= kViewLateral;
}

// Render-grid position of `target` as seen from the observer; false if it
// is outside the window.
inline bool view_position(Cell observer, Direction facing, Cell target, int& row, int& col) {
  const Cell d = target - observer;
  const Cell f = forward_vector(facing);
  const Cell r = right_vector(facing);
  const int ahead = d.x * f.x + d.y * f.y;
  const int side = d.x * r.x + d.y * r.y;
  row = kObserverRow - ahead;
  col = kObserverCol + side;
  return row >= 0 && row < kViewSize && col >= 0 && col < kViewSize;
}

}  // namespace hidden_agenda
