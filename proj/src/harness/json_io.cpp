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

#include "hidden_agenda/json_io.hpp"

#include <map>
#include <string>

namespace hidden_agenda::json_io {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

json cell_to_json(Cell c) { return json::array({c.x, c.y}); }

Cell cell_from_json(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

json vote_to_json(const Vote& v) {
  switch (v.kind) {
    case Vote::Kind::kTarget: return v.target;
    case Vote::Kind::kAbstain: return "abstain";
    case Vote::Kind::kInactive: return "inactive";
  }
  return "abstain";
}

Vote vote_from_json(const json& j) {
  if (j.is_number_integer()) return Vote::for_player(j.get<int>());
  const auto s = j.get<std::string>();
  if (s == "abstain") return Vote::abstain();
  if (s == "inactive") return Vote::inactive();
  throw std::invalid_argument("bad vote value: " + s);
}

json event_to_json(const Event& e) {
  return std::visit(
      Overloaded{
          [](const event::Pickup& x) { return json{{"type", "pickup"}, {"player", x.player}}; },
          [](const event::Deposit& x) {
            return json{{"type", "deposit"}, {"player", x.player}, {"count", x.count}};
          },
          [](const event::FireBeam& x) {
            json cells = json::array();
            for (Cell c : x.cells) cells.push_back(cell_to_json(c));
            return json{{"type", "fire_beam"}, {"player", x.player}, {"cells", cells}};
          },
          [](const event::Frozen& x) { return json{{"type", "frozen"}, {"victim", x.victim}, {"by", x.by}}; },
          [](const event::VotingStarted& x) {
            return json{{"type", "voting_started"},
                        {"trigger", x.trigger == VotingTrigger::kWitness ? "witness" : "timer"}};
          },
          [](const event::VoteCast& x) {
            return json{{"type", "vote_cast"}, {"player", x.player}, {"choice", vote_to_json(x.choice)}};
          },
          [](const event::Jailed& x) { return json{{"type", "jailed"}, {"player", x.player}}; },
          [](const event::PhaseEnded&) { return json{{"type", "phase_ended"}}; },
      },
      e);
}

Event event_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "pickup") return event::Pickup{j.at("player").get<int>()};
  if (type == "deposit") return event::Deposit{j.at("player").get<int>(), j.at("count").get<int>()};
  if (type == "fire_beam") {
    event::FireBeam f{j.at("player").get<int>(), {}};
    for (const auto& c : j.at("cells")) f.cells.push_back(cell_from_json(c));
    return f;
  }
  if (type == "frozen") return event::Frozen{j.at("victim").get<int>(), j.at("by").get<int>()};
  if (type == "voting_started") {
    const auto t = j.at("trigger").get<std::string>();
    if (t != "witness" && t != "timer") throw std::invalid_argument("bad voting trigger: " + t);
    return event::VotingStarted{t == "witness" ? VotingTrigger::kWitness : VotingTrigger::kTimer};
  }
  if (type == "vote_cast") return event::VoteCast{j.at("player").get<int>(), vote_from_json(j.at("choice"))};
  if (type == "jailed") return event::Jailed{j.at("player").get<int>()};
  if (type == "phase_ended") return event::PhaseEnded{};
  throw std::invalid_argument("unknown event type: " + type);
}

json config_to_json(const GameConfig& config) {
  json j = json::object();
  for (const auto& [k, v] : config_to_pairs(config)) j[k] = v;
  return j;
}

GameConfig config_from_json(const json& j) {
  std::map<std::string, std::string> pairs;
  for (const auto& [k, v] : j.items()) pairs[k] = v.is_string() ? v.get<std::string>() : v.dump();
  return config_from_pairs(pairs);
}

json policy_to_json(const PolicySpec& spec) {
  json params = json::object();
  for (const auto& [k, v] : spec.parameters) params[k] = v;
  return json{{"kind", to_string(spec.kind)}, {"parameters", params}, {"rng_seed", spec.rng_seed}};
}

PolicySpec policy_from_json(const json& j) {
  PolicySpec spec;
  spec.kind = policy_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("parameters")) {
    for (const auto& [k, v] : j.at("parameters").items()) spec.parameters[k] = v.get<double>();
  }
  if (j.contains("rng_seed")) spec.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  return spec;
}

}  // namespace hidden_agenda::json_io
