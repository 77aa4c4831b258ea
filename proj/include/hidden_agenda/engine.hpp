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
#include <span>

#include "hidden_agenda/config.hpp"
#include "hidden_agenda/world.hpp"

namespace hidden_agenda {

// Fresh episode. RNG draws, in order: impostor seats (shuffle of seats,
// first num_impostors are impostors), then the color permutation. Seat i
// starts on spawn point i facing north.
WorldState reset(const GameConfig& config, std::uint64_t seed);

// Advances one timestep in place. `actions` must hold one entry per seat;
// entries of inactive players are ignored. Throws EngineError on a
// terminal state or wrong action count.
StepOutcome step(WorldState& state, std::span<const PlayerAction> actions);

}  // namespace hidden_agenda
