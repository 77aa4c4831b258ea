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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hidden_agenda {

// Grid coordinate. x grows eastward, y grows southward.
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
  Cell operator+(const Cell& o) const { return {x + o.x, y + o.y}; }
  Cell operator-(const Cell& o) const { return {x - o.x, y - o.y}; }
};

enum class Direction : std::uint8_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

inline Direction turn_left(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 3) % 4);
}
inline Direction turn_right(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 1) % 4);
}
// Unit step for a direction.
inline Cell forward_vector(Direction d) {
  switch (d) {
    case Direction::kNorth: return {0, -1};
    case Direction::kEast: return {1, 0};
    case Direction::kSouth: return {0, 1};
    case Direction::kWest: return {-1, 0};
  }
  return {0, 0};
}
// Unit step to the right of a player facing `d`.
inline Cell right_vector(Direction d) { return forward_vector(turn_right(d)); }

enum class Role : std::uint8_t { kCrewmate = 0, kImpostor = 1 };
enum class Status : std::uint8_t { kActive = 0, kFrozen = 1, kJailed = 2 };
enum class Phase : std::uint8_t { kSituation = 0, kVoting = 1 };

enum class WinCondition : std::uint8_t {
  kCrewWinByTask = 0,
  kCrewWinByVote = 1,
  kImpostorWinByFreeze = 2,
  kImpostorWinByVote = 3,
  kDrawTimeout = 4,
};
inline constexpr int kNumWinConditions = 5;

std::string_view to_string(WinCondition w);
WinCondition win_condition_from_string(std::string_view s);
std::string_view to_string(Role r);
std::string_view to_string(Status s);
std::string_view to_string(Phase p);
std::string_view to_string(Direction d);

enum class ActionKind : std::uint8_t {
  kNoop = 0,
  kMoveN,
  kMoveE,
  kMoveS,
  kMoveW,
  kTurnLeft,
  kTurnRight,
  kFire,
  kVoteAbstain,
  kVoteFor,
};

// One seat's choice for a timestep. Out-of-context actions are legal and
// resolve as no-ops.
struct PlayerAction {
  ActionKind kind = ActionKind::kNoop;
  int target = -1;  // only meaningful for kVoteFor

  static PlayerAction noop() { return {}; }
  static PlayerAction move(Direction d) {
    return {static_cast<ActionKind>(static_cast<int>(ActionKind::kMoveN) + static_cast<int>(d)), -1};
  }
  static PlayerAction turn_left() { return {ActionKind::kTurnLeft, -1}; }
  static PlayerAction turn_right() { return {ActionKind::kTurnRight, -1}; }
  static PlayerAction fire() { return {ActionKind::kFire, -1}; }
  static PlayerAction abstain() { return {ActionKind::kVoteAbstain, -1}; }
  static PlayerAction vote_for(int seat) { return {ActionKind::kVoteFor, seat}; }

  bool is_move() const { return kind >= ActionKind::kMoveN && kind <= ActionKind::kMoveW; }
  bool is_turn() const { return kind == ActionKind::kTurnLeft || kind == ActionKind::kTurnRight; }
  bool is_vote() const { return kind == ActionKind::kVoteAbstain || kind == ActionKind::kVoteFor; }
  Direction move_direction() const {
    return static_cast<Direction>(static_cast<int>(kind) - static_cast<int>(ActionKind::kMoveN));
  }

  // Dense integer id: 0..8 for the fixed actions, 9 + seat for votes.
  int to_id() const;
  static PlayerAction from_id(int id, int num_players);
  static int num_ids(int num_players) { return 9 + num_players; }

  // Wire/CLI name: "noop", "move_n", ..., "fire", "abstain", "vote_3".
  std::string to_name() const;
  static PlayerAction from_name(std::string_view name, int num_players);

  friend bool operator==(const PlayerAction&, const PlayerAction&) = default;
};

// A row of the vote ledger. Column encoding matches the observation's vote
// matrix: seats 0..n-1, then abstain (n), then inactive (n+1).
struct Vote {
  enum class Kind : std::uint8_t { kTarget, kAbstain, kInactive };
  Kind kind = Kind::kAbstain;
  int target = -1;

  static Vote abstain() { return {Kind::kAbstain, -1}; }
  static Vote inactive() { return {Kind::kInactive, -1}; }
  static Vote for_player(int seat) { return {Kind::kTarget, seat}; }

  int column(int num_players) const {
    switch (kind) {
      case Kind::kTarget: return target;
      case Kind::kAbstain: return num_players;
      case Kind::kInactive: return num_players + 1;
    }
    return num_players;
  }
  static Vote from_column(int column, int num_players) {
    if (column == num_players) return abstain();
    if (column == num_players + 1) return inactive();
    return for_player(column);
  }

  friend bool operator==(const Vote&, const Vote&) = default;
};

enum class VotingTrigger : std::uint8_t { kWitness = 0, kTimer = 1 };

// Events, in the order they are produced within a step.
namespace event {
struct Pickup {
  int player;
  friend bool operator==(const Pickup&, const Pickup&) = default;
};
struct Deposit {
  int player;
  int count;
  friend bool operator==(const Deposit&, const Deposit&) = default;
};
struct FireBeam {
  int player;
  std::vector<Cell> cells;
  friend bool operator==(const FireBeam&, const FireBeam&) = default;
};
struct Frozen {
  int victim;
  int by;
  friend bool operator==(const Frozen&, const Frozen&) = default;
};
struct VotingStarted {
  VotingTrigger trigger;
  friend bool operator==(const VotingStarted&, const VotingStarted&) = default;
};
struct VoteCast {
  int player;
  Vote choice;
  friend bool operator==(const VoteCast&, const VoteCast&) = default;
};
struct Jailed {
  int player;
  friend bool operator==(const Jailed&, const Jailed&) = default;
};
struct PhaseEnded {
  friend bool operator==(const PhaseEnded&, const PhaseEnded&) = default;
};
}  // namespace event

using Event = std::variant<event::Pickup, event::Deposit, event::FireBeam, event::Frozen,
                           event::VotingStarted, event::VoteCast, event::Jailed, event::PhaseEnded>;

struct StepOutcome {
  std::vector<double> rewards;
  std::vector<Event> events;
  std::optional<WinCondition> terminal;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EngineError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hidden_agenda
