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

// Policy interface and scripted baselines. Policies see only their own
// observation bundle, their seat and role, the game config and the static
// map layout.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "hidden_agenda/config.hpp"
#include "hidden_agenda/map.hpp"
#include "hidden_agenda/observation.hpp"

namespace hidden_agenda {

enum class PolicyKind {
  kRandom,
  kCollectorCrew,
  kPairedCollectorCrew,
  kChaserImpostor,
  kCamperImpostor,
  kIdle,
};

std::string_view to_string(PolicyKind k);
PolicyKind policy_kind_from_string(std::string_view name);  // throws ConfigError

struct PolicySpec {
  PolicyKind kind = PolicyKind::kIdle;
  // Per-kind tunables, see docs in README. Unknown keys are rejected by
  // make_policy.
  std::map<std::string, double> parameters;
  std::uint64_t rng_seed = 0;

  double param(const std::string& key, double fallback) const;
  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

// "kind" or "kind:key=value,key=value" (optionally "@seed" at the end).
PolicySpec parse_policy_spec(std::string_view text);
std::string format_policy_spec(const PolicySpec& spec);

struct PolicyContext {
  int seat = 0;
  Role role = Role::kCrewmate;
  GameConfig config;
  std::shared_ptr<const GameMap> map;
  int partner_seat = -1;  // PairedCollectorCrew only
  std::uint64_t seed = 0;
};

class Policy {
 public:
  virtual ~Policy() = default;
  // One call per timestep with the observation produced by the previous
  // step (or by reset).
  virtual PlayerAction act(const ObservationBundle& observation) = 0;
  virtual PolicyKind kind() const = 0;
};

// Throws ConfigError for role/kind mismatches or unknown parameters.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const PolicyContext& context);

// True if `action` is meaningful for a player of `role` in `phase`.
bool action_is_legal(const PlayerAction& action, Role role, Phase phase, int num_players);

}  // namespace hidden_agenda
