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

#include "hidden_agenda/privileged.hpp"

#include <cmath>

namespace hidden_agenda {

PrivilegedInfo privileged_info(const WorldState& state, int player) {
  const Cell self = state.players.at(player).position;
  PrivilegedInfo info;
  info.identity.reserve(state.players.size());
  info.distances.reserve(state.players.size());
  for (const auto& p : state.players) {
    info.identity.push_back(p.role == Role::kImpostor ? 1.0f : 0.0f);
    const double dx = p.position.x - self.x;
    const double dy = p.position.y - self.y;
    info.distances.push_back(static_cast<float>(std::hypot(dx, dy)));
  }
  return info;
}

}  // namespace hidden_agenda
