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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hidden_agenda {

// Every tunable rule parameter. Defaults are the canonical game.
struct GameConfig {
  int num_players = 5;
  int num_impostors = 1;
  int fuel_goal = 32;
  int situation_phase_length = 200;
  int voting_phase_length = 25;
  int freeze_cooldown = 50;
  int episode_limit = 3000;
  int inventory_capacity = 2;
  int beam_forward_span = 2;
  int beam_lateral_span = 1;
  // Alternate beam reading: lateral cells also attach to the shooter's own row.
  bool beam_flanks_own_row = false;
  int fuel_respawn_delay = 40;
  double reward_win = 4.0;
  double reward_loss = -4.0;
  double reward_pickup = 0.25;
  double reward_deposit = 0.25;
  double reward_freeze = 1.0;
  double reward_frozen = -1.0;
  double reward_vote_success = 0.0;
  double reward_vote_failure = 0.0;
  std::string map_name = "canonical";

  int num_crewmates() const { return num_players - num_impostors; }

  // Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

// Field names in declaration order; the config file and the replay
// snapshot use exactly these keys.
const std::vector<std::string>& config_keys();

// Applies `value` to the named field. Unknown keys and malformed values
// throw ConfigError.
void set_config_field(GameConfig& config, std::string_view key, std::string_view value);
std::string get_config_field(const GameConfig& config, std::string_view key);

GameConfig config_from_pairs(const std::map<std::string, std::string>& pairs);
std::map<std::string, std::string> config_to_pairs(const GameConfig& config);

// Flat "key = value" document; '#' starts a comment.
GameConfig parse_config_text(std::string_view text);
std::string format_config_text(const GameConfig& config);
GameConfig load_config_file(const std::string& path);

}  // namespace hidden_agenda
