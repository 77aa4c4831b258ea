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

// JSON encodings shared by replays and the session protocol.

#include <nlohmann/json.hpp>

#include "hidden_agenda/agents.hpp"
#include "hidden_agenda/config.hpp"
#include "hidden_agenda/types.hpp"

namespace hidden_agenda::json_io {

using nlohmann::json;

// {"type": "pickup", "player": 1}, {"type": "fire_beam", "player": 0, "cells": [[x, y], ...]}, ...
json event_to_json(const Event& e);
Event event_from_json(const json& j);

// Seat number, "abstain" or "inactive".
json vote_to_json(const Vote& v);
Vote vote_from_json(const json& j);

// Values kept as the strings used by the config file format.
json config_to_json(const GameConfig& config);
GameConfig config_from_json(const json& j);

json policy_to_json(const PolicySpec& spec);
PolicySpec policy_from_json(const json& j);

json cell_to_json(Cell c);
Cell cell_from_json(const json& j);

}  // namespace hidden_agenda::json_io
