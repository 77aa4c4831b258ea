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

#include "hidden_agenda/types.hpp"

#include <array>
#include <charconv>
#include <string>

namespace hidden_agenda {
namespace {

constexpr std::array<std::string_view, kNumWinConditions> kWinNames = {
    "CrewWinByTask", "CrewWinByVote", "ImpostorWinByFreeze", "ImpostorWinByVote", "DrawTimeout"};

constexpr std::array<std::string_view, 9> kFixedActionNames = {
    "noop", "move_n", "move_e", "move_s", "move_w", "turn_left", "turn_right", "fire", "abstain"};

}  // namespace

std::string_view to_string(WinCondition w) { return kWinNames[static_cast<int>(w)]; }

WinCondition win_condition_from_string(std::string_view s) {
  for (int i = 0; i < kNumWinConditions; ++i) {
    if (kWinNames[i] == s) return static_cast<WinCondition>(i);
  }
  throw std::invalid_argument("unknown win condition: " + std::string(s));
}

std::string_view to_string(Role r) { return r == Role::kImpostor ? "impostor" : "crewmate"; }

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kActive: return "active";
    case Status::kFrozen: return "frozen";
    case Status::kJailed: return "jailed";
  }
  return "?";
}

std::string_view to_string(Phase p) { return p == Phase::kVoting ? "voting" : "situation"; }

std::string_view to_string(Direction d) {
  constexpr std::array<std::string_view, 4> names = {"N", "E", "S", "W"};
  return names[static_cast<int>(d)];
}

int PlayerAction::to_id() const {
  if (kind == ActionKind::kVoteFor) return 9 + target;
  return static_cast<int>(kind);
}

PlayerAction PlayerAction::from_id(int id, int num_players) {
  if (id < 0 || id >= num_ids(num_players)) {
    throw std::invalid_argument("action id out of range: " + std::to_string(id));
  }
  if (id >= 9) return vote_for(id - 9);
  if (id == 8) return abstain();
  return {static_cast<ActionKind>(id), -1};
}

std::string PlayerAction::to_name() const {
  if (kind == ActionKind::kVoteFor) return "vote_" + std::to_string(target);
  return std::string(kFixedActionNames[to_id()]);
}

PlayerAction PlayerAction::from_name(std::string_view name, int num_players) {
  for (int i = 0; i < static_cast<int>(kFixedActionNames.size()); ++i) {
    if (kFixedActionNames[i] == name) return from_id(i, num_players);
  }
  if (name.starts_with("vote_")) {
    int seat = -1;
    const auto digits = name.substr(5);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seat);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && seat >= 0 &&
        seat < num_players) {
      return vote_for(seat);
    }
  }
  throw std::invalid_argument("unknown action: " + std::string(name));
}

}  // namespace hidden_agenda
