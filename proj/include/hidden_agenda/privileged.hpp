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

// Hindsight-only channel for training-time critics. Acting policies never
// see this; it lives in its own library so they cannot link it.

#include <vector>

#include "hidden_agenda/world.hpp"

namespace hidden_agenda {

struct PrivilegedInfo {
  std::vector<float> identity;   // 1 for impostors, 0 otherwise
  std::vector<float> distances;  // Euclidean cell distance from the observer
};

PrivilegedInfo privileged_info(const WorldState& state, int player);

}  // namespace hidden_agenda
