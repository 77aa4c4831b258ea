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

#include "hidden_agenda/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "hidden_agenda/types.hpp"

namespace hidden_agenda {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

int parse_int(std::string_view key, std::string_view value) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config field '" + std::string(key) + "': expected integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  // from_chars for double is incomplete in older libstdc++.
  std::string copy(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(copy, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (copy.empty() || used != copy.size()) {
    throw ConfigError("config field '" + std::string(key) + "': expected number, got '" + copy + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config field '" + std::string(key) + "': expected true/false, got '" +
                    std::string(value) + "'");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Field {
  std::string name;
  std::function<void(GameConfig&, std::string_view)> set;
  std::function<std::string(const GameConfig&)> get;
};

template <typename M>
Field int_field(std::string name, M GameConfig::*member) {
  return {name,
          [name, member](GameConfig& c, std::string_view v) { c.*member = parse_int(name, v); },
          [member](const GameConfig& c) { return std::to_string(c.*member); }};
}

Field double_field(std::string name, double GameConfig::*member) {
  return {name,
          [name, member](GameConfig& c, std::string_view v) { c.*member = parse_double(name, v); },
          [member](const GameConfig& c) { return format_double(c.*member); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      int_field("num_players", &GameConfig::num_players),
      int_field("num_impostors", &GameConfig::num_impostors),
      int_field("fuel_goal", &GameConfig::fuel_goal),
      int_field("situation_phase_length", &GameConfig::situation_phase_length),
      int_field("voting_phase_length", &GameConfig::voting_phase_length),
      int_field("freeze_cooldown", &GameConfig::freeze_cooldown),
      int_field("episode_limit", &GameConfig::episode_limit),
      int_field("inventory_capacity", &GameConfig::inventory_capacity),
      int_field("beam_forward_span", &GameConfig::beam_forward_span),
      int_field("beam_lateral_span", &GameConfig::beam_lateral_span),
      Field{"beam_flanks_own_row",
            [](GameConfig& c, std::string_view v) {
              c.beam_flanks_own_row = parse_bool("beam_flanks_own_row", v);
            },
            [](const GameConfig& c) { return std::string(c.beam_flanks_own_row ? "true" : "false"); }},
      int_field("fuel_respawn_delay", &GameConfig::fuel_respawn_delay),
      double_field("reward_win", &GameConfig::reward_win),
      double_field("reward_loss", &GameConfig::reward_loss),
      double_field("reward_pickup", &GameConfig::reward_pickup),
      double_field("reward_deposit", &GameConfig::reward_deposit),
      double_field("reward_freeze", &GameConfig::reward_freeze),
      double_field("reward_frozen", &GameConfig::reward_frozen),
      double_field("reward_vote_success", &GameConfig::reward_vote_success),
      double_field("reward_vote_failure", &GameConfig::reward_vote_failure),
      Field{"map_name",
            [](GameConfig& c, std::string_view v) {
              if (v.empty()) throw ConfigError("config field 'map_name': must not be empty");
              c.map_name = std::string(v);
            },
            [](const GameConfig& c) { return c.map_name; }},
  };
  return table;
}

const Field& find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.name == key) return f;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError("config field '" + field + "': " + what);
}

}  // namespace

void GameConfig::validate() const {
  require(num_impostors >= 1, "num_impostors", "must be at least 1");
  require(num_players - num_impostors > num_impostors, "num_players",
          "crewmates must outnumber impostors");
  require(num_players <= 5, "num_players", "at most 5 seats are supported by the map format");
  require(fuel_goal >= 1, "fuel_goal", "must be at least 1");
  require(inventory_capacity >= 1, "inventory_capacity", "must be at least 1");
  require(situation_phase_length > 0, "situation_phase_length", "must be positive");
  require(voting_phase_length > 0, "voting_phase_length", "must be positive");
  require(freeze_cooldown > 0, "freeze_cooldown", "must be positive");
  require(episode_limit > 0, "episode_limit", "must be positive");
  require(fuel_respawn_delay > 0, "fuel_respawn_delay", "must be positive");
  require(beam_forward_span >= 1, "beam_forward_span", "must be at least 1");
  require(beam_lateral_span >= 0, "beam_lateral_span", "must be non-negative");
  require(!map_name.empty(), "map_name", "must not be empty");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.name);
    return out;
  }();
  return keys;
}

void set_config_field(GameConfig& config, std::string_view key, std::string_view value) {
  find_field(key).set(config, value);
}

std::string get_config_field(const GameConfig& config, std::string_view key) {
  return find_field(key).get(config);
}

GameConfig config_from_pairs(const std::map<std::string, std::string>& pairs) {
  GameConfig config;
  for (const auto& [k, v] : pairs) set_config_field(config, k, v);
  config.validate();
  return config;
}

std::map<std::string, std::string> config_to_pairs(const GameConfig& config) {
  std::map<std::string, std::string> out;
  for (const auto& f : fields()) out[f.name] = f.get(config);
  return out;
}

GameConfig parse_config_text(std::string_view text) {
  std::map<std::string, std::string> pairs;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (pairs.contains(key)) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    pairs.emplace(std::move(key), std::move(value));
  }
  return config_from_pairs(pairs);
}

std::string format_config_text(const GameConfig& config) {
  std::string out;
  for (const auto& f : fields()) out += f.name + " = " + f.get(config) + "\n";
  return out;
}

GameConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace hidden_agenda
