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

// Wire protocol of the session service: JSON text messages over a
// websocket. See docs/protocol.md for the schema.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hidden_agenda/harness.hpp"
#include "hidden_agenda/json_io.hpp"
#include "hidden_agenda/observation.hpp"

namespace hidden_agenda::service {

using json_io::json;

inline constexpr int kProtocolVersion = 1;

// Client-visible failure with a stable machine-readable code.
class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(std::string code, const std::string& detail) : std::runtime_error(detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

enum class FrameMode { kPng, kSprites };
std::string_view to_string(FrameMode mode);
FrameMode frame_mode_from_string(std::string_view name);  // throws ProtocolError

struct SessionConfig {
  GameConfig game;
  std::optional<int> human_seat;  // empty: spectator session, all seats bots
  Roster roster = parse_roster("chaser / collector collector collector collector");
  int tick_rate = 8;  // ticks per second
  std::uint64_t seed = 0;

  // Throws ProtocolError("invalid_config", ...).
  void validate() const;
};

// create_session body <-> SessionConfig.
SessionConfig session_config_from_json(const json& j);
json session_config_to_json(const SessionConfig& config);

// Events a given viewer may see: votes, jails, phase changes and freezes
// are public; pickups, deposits and shots only to their actor; the shooter
// of a freeze only to the shooter. `seat` empty means spectator.
std::vector<Event> public_events(const std::vector<Event>& events, std::optional<int> seat);

// Frame for `seat` (empty: spectator) of `state` after `tick` steps.
json encode_frame(const WorldState& state, std::optional<int> seat, FrameMode mode, int tick,
                  const std::vector<Event>& last_events, const std::string& session_id);

// Structured content of a frame message; encode(decode(frame)) == frame.
struct DecodedFrame {
  std::string session;
  int tick = 0;
  Phase phase = Phase::kSituation;
  FrameMode mode = FrameMode::kSprites;
  std::optional<int> seat;
  std::optional<Role> role;  // own role only
  // Player frames.
  std::vector<std::uint8_t> rgb;  // kObsBytes, filled in both modes
  std::vector<TileCode> tiles;    // 121 in sprite mode
  float inventory_fraction = 0.0f;
  float progress_fraction = 0.0f;
  std::vector<float> vote_matrix;
  // Spectator frames.
  std::optional<SpectatorOverlay> overlay;
  int map_height = 0;
  int map_width = 0;
  std::vector<std::uint8_t> map_rgb;
  std::vector<TileCode> map_tiles;
  std::vector<Event> events;
};
DecodedFrame decode_frame(const json& frame);
json encode_decoded(const DecodedFrame& frame);

json error_message(const std::string& code, const std::string& detail);
json notice_message(const std::string& code, const std::string& detail);

// In-memory PNG of an RGB8 image, and back.
std::vector<std::uint8_t> encode_png(const std::vector<std::uint8_t>& rgb, int height, int width);
std::vector<std::uint8_t> decode_png(const std::vector<std::uint8_t>& png, int* height, int* width);
std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

}  // namespace hidden_agenda::service
