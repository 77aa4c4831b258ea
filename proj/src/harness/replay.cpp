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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hidden_agenda/harness.hpp"
#include "hidden_agenda/json_io.hpp"

namespace hidden_agenda {
namespace {

using json_io::json;

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex(const std::string& s) {
  std::size_t used = 0;
  const std::uint64_t v = std::stoull(s, &used, 16);
  if (used != s.size()) throw std::invalid_argument("bad hex digest");
  return v;
}

std::uint64_t text_digest(const std::string& text) {
  return bytes_digest({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

json body_to_json(const EpisodeRecord& r) {
  json roster{{"impostors", json::array()}, {"crew", json::array()}};
  for (const auto& s : r.roster.impostors) roster["impostors"].push_back(json_io::policy_to_json(s));
  for (const auto& s : r.roster.crew) roster["crew"].push_back(json_io::policy_to_json(s));
  json roles = json::array();
  for (Role role : r.roles) roles.push_back(to_string(role));
  json actions = json::array();
  for (const auto& joint : r.actions) {
    json row = json::array();
    for (const auto& a : joint) row.push_back(a.to_id());
    actions.push_back(std::move(row));
  }
  json events = json::array();
  for (const auto& step_events : r.events) {
    json row = json::array();
    for (const auto& e : step_events) row.push_back(json_io::event_to_json(e));
    events.push_back(std::move(row));
  }
  return json{{"format_version", r.format_version},
              {"config", json_io::config_to_json(r.config)},
              {"seed", r.seed},
              {"roster", roster},
              {"seat_agent", r.seat_agent},
              {"roles", roles},
              {"colors", r.colors},
              {"actions", actions},
              {"events", events},
              {"outcome", r.outcome ? json(to_string(*r.outcome)) : json(nullptr)},
              {"returns", r.returns},
              {"steps", r.steps},
              {"final_digest", hex(r.final_digest)}};
}

EpisodeRecord body_from_json(const json& j) {
  EpisodeRecord r;
  r.format_version = j.at("format_version").get<int>();
  r.config = json_io::config_from_json(j.at("config"));
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& s : j.at("roster").at("impostors")) r.roster.impostors.push_back(json_io::policy_from_json(s));
  for (const auto& s : j.at("roster").at("crew")) r.roster.crew.push_back(json_io::policy_from_json(s));
  r.seat_agent = j.at("seat_agent").get<std::vector<int>>();
  for (const auto& role : j.at("roles")) {
    r.roles.push_back(role.get<std::string>() == "impostor" ? Role::kImpostor : Role::kCrewmate);
  }
  r.colors = j.at("colors").get<std::vector<int>>();
  const int n = static_cast<int>(r.seat_agent.size());
  for (const auto& row : j.at("actions")) {
    std::vector<PlayerAction> joint;
    for (const auto& id : row) joint.push_back(PlayerAction::from_id(id.get<int>(), n));
    r.actions.push_back(std::move(joint));
  }
  for (const auto& row : j.at("events")) {
    std::vector<Event> step_events;
    for (const auto& e : row) step_events.push_back(json_io::event_from_json(e));
    r.events.push_back(std::move(step_events));
  }
  if (!j.at("outcome").is_null()) r.outcome = win_condition_from_string(j.at("outcome").get<std::string>());
  r.returns = j.at("returns").get<std::vector<double>>();
  r.steps = j.at("steps").get<int>();
  r.final_digest = parse_hex(j.at("final_digest").get<std::string>());
  return r;
}

}  // namespace

std::string replay_to_json(const EpisodeRecord& record) {
  json j = body_to_json(record);
  j["digest"] = hex(text_digest(j.dump()));
  return j.dump();
}

EpisodeRecord replay_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ReplayError(std::string("corrupt replay: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format_version") || !j["format_version"].is_number_integer()) {
    throw ReplayError("corrupt replay: missing format_version");
  }
  const int version = j["format_version"].get<int>();
  if (version != kReplayFormatVersion) {
    throw ReplayError("unsupported replay format_version " + std::to_string(version) + " (expected " +
                      std::to_string(kReplayFormatVersion) + ")");
  }
  if (!j.contains("digest") || !j["digest"].is_string()) throw ReplayError("corrupt replay: missing digest");
  const std::string stored = j["digest"].get<std::string>();
  j.erase("digest");
  if (hex(text_digest(j.dump())) != stored) throw ReplayError("corrupt replay: digest mismatch");
  try {
    return body_from_json(j);
  } catch (const std::exception& e) {
    throw ReplayError(std::string("corrupt replay: ") + e.what());
  }
}

void save_replay(const EpisodeRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReplayError("cannot write replay " + path.string());
  out << replay_to_json(record) << '\n';
  if (!out) throw ReplayError("failed writing replay " + path.string());
}

EpisodeRecord load_replay(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReplayError("cannot read replay " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return replay_from_json(buf.str());
}

ReplayCheck verify_replay(const EpisodeRecord& record) {
  ReplayCheck check;
  if (record.actions.size() != static_cast<std::size_t>(record.steps)) {
    check.message = "record has no action log";
    return check;
  }
  WorldState state = reset(record.config, record.seed);
  for (const auto& p : state.players) {
    if (p.role != record.roles.at(p.id) || p.color != record.colors.at(p.id)) {
      check.first_mismatch_step = 0;
      check.message = "role/color assignment differs for seat " + std::to_string(p.id);
      return check;
    }
  }
  std::vector<double> returns(state.num_players(), 0.0);
  const bool have_events = record.events.size() == record.actions.size();
  for (int t = 0; t < record.steps; ++t) {
    if (state.terminal) {
      check.first_mismatch_step = t;
      check.message = "episode ended early";
      return check;
    }
    const StepOutcome out = step(state, record.actions[t]);
    for (std::size_t s = 0; s < returns.size(); ++s) returns[s] += out.rewards[s];
    if (have_events && out.events != record.events[t]) {
      check.first_mismatch_step = t;
      check.message = "event log differs at step " + std::to_string(t);
      return check;
    }
  }
  if (state.terminal != record.outcome) {
    check.first_mismatch_step = record.steps;
    check.message = "outcome differs";
  } else if (returns != record.returns) {
    check.first_mismatch_step = record.steps;
    check.message = "returns differ";
  } else if (state_digest(state) != record.final_digest) {
    check.first_mismatch_step = record.steps;
    check.message = "final state digest differs";
  } else {
    check.ok = true;
  }
  return check;
}

}  // namespace hidden_agenda
