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

#include "hidden_agenda/service/protocol.hpp"

#include <png.h>

#include <boost/beast/core/detail/base64.hpp>
#include <cstring>

namespace hidden_agenda::service {

namespace {

namespace b64 = boost::beast::detail::base64;

[[noreturn]] void bad_frame(const std::string& detail) { throw ProtocolError("bad_frame", detail); }

Phase phase_from_string(std::string_view s) {
  if (s == "situation") return Phase::kSituation;
  if (s == "voting") return Phase::kVoting;
  bad_frame("unknown phase '" + std::string(s) + "'");
}

Role role_from_string(std::string_view s) {
  if (s == "crewmate") return Role::kCrewmate;
  if (s == "impostor") return Role::kImpostor;
  bad_frame("unknown role '" + std::string(s) + "'");
}

Status status_from_string(std::string_view s) {
  if (s == "active") return Status::kActive;
  if (s == "frozen") return Status::kFrozen;
  if (s == "jailed") return Status::kJailed;
  bad_frame("unknown status '" + std::string(s) + "'");
}

Direction direction_from_string(std::string_view s) {
  for (int d = 0; d < 4; ++d) {
    if (to_string(static_cast<Direction>(d)) == s) return static_cast<Direction>(d);
  }
  bad_frame("unknown direction '" + std::string(s) + "'");
}

json tiles_to_json(const std::vector<TileCode>& tiles) {
  json out = json::array();
  for (const auto& t : tiles) {
    out.push_back({static_cast<int>(t.terrain), static_cast<int>(t.avatar_color), static_cast<int>(t.facing),
                   t.frozen ? 1 : 0, t.beam ? 1 : 0});
  }
  return out;
}

std::vector<TileCode> tiles_from_json(const json& j, std::size_t expected) {
  if (!j.is_array() || j.size() != expected) bad_frame("tile grid must have " + std::to_string(expected) + " entries");
  std::vector<TileCode> out;
  out.reserve(expected);
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 5) bad_frame("tile entries are [terrain, color, facing, frozen, beam]");
    const int terrain = e[0].get<int>();
    const int color = e[1].get<int>();
    const int facing = e[2].get<int>();
    if (terrain < 0 || terrain >= kNumTerrains || color < -1 || color > 127 || facing < 0 || facing > 3) {
      bad_frame("tile entry out of range");
    }
    TileCode t;
    t.terrain = static_cast<Terrain>(terrain);
    t.avatar_color = static_cast<std::int8_t>(color);
    t.facing = static_cast<Direction>(facing);
    t.frozen = e[3].get<int>() != 0;
    t.beam = e[4].get<int>() != 0;
    out.push_back(t);
  }
  return out;
}

json matrix_to_json(const std::vector<float>& m, int cols) {
  json rows = json::array();
  for (std::size_t r = 0; cols > 0 && r * cols < m.size(); ++r) {
    rows.push_back(std::vector<float>(m.begin() + r * cols, m.begin() + (r + 1) * cols));
  }
  return rows;
}

std::vector<float> matrix_from_json(const json& j) {
  std::vector<float> out;
  for (const auto& row : j) {
    for (const auto& v : row) out.push_back(v.get<float>());
  }
  return out;
}

int vote_cols(const std::vector<float>& m) {
  // n x (n+2): solve n^2 + 2n = size.
  int n = 0;
  while (static_cast<std::size_t>(n * (n + 2)) < m.size()) ++n;
  return n + 2;
}

json wire_event(const Event& e) {
  json j = json_io::event_to_json(e);
  if (const auto* f = std::get_if<event::Frozen>(&e); f && f->by < 0) j.erase("by");
  return j;
}

Event event_from_wire(const json& j) {
  if (j.at("type") == "frozen" && !j.contains("by")) return event::Frozen{j.at("victim").get<int>(), -1};
  return json_io::event_from_json(j);
}

json image_to_json(FrameMode mode, const std::vector<std::uint8_t>& rgb, const std::vector<TileCode>& tiles,
                   int height, int width) {
  if (mode == FrameMode::kPng) return {{"rgb_png", base64_encode(encode_png(rgb, height, width))}};
  return {{"tiles", tiles_to_json(tiles)}};
}

// Fills rgb and tiles from whichever the payload carries.
void image_from_json(const json& j, FrameMode mode, int height, int width, std::vector<std::uint8_t>& rgb,
                     std::vector<TileCode>& tiles) {
  const int rows = height / kSpritePixels;
  const int cols = width / kSpritePixels;
  if (mode == FrameMode::kPng) {
    int h = 0;
    int w = 0;
    rgb = decode_png(base64_decode(j.at("rgb_png").get<std::string>()), &h, &w);
    if (h != height || w != width) bad_frame("image has the wrong size");
    tiles = decode_tiles(rgb, rows, cols);
  } else {
    tiles = tiles_from_json(j.at("tiles"), static_cast<std::size_t>(rows) * cols);
    rgb.assign(static_cast<std::size_t>(height) * width * 3, 0);
    paint_tiles(tiles, cols, rgb);
  }
}

}  // namespace

std::string_view to_string(FrameMode mode) { return mode == FrameMode::kPng ? "png" : "sprites"; }

FrameMode frame_mode_from_string(std::string_view name) {
  if (name == "png") return FrameMode::kPng;
  if (name == "sprites") return FrameMode::kSprites;
  throw ProtocolError("invalid_config", "mode must be 'png' or 'sprites', got '" + std::string(name) + "'");
}

void SessionConfig::validate() const {
  try {
    game.validate();
  } catch (const ConfigError& e) {
    throw ProtocolError("invalid_config", e.what());
  }
  if (tick_rate < 1 || tick_rate > 30) {
    throw ProtocolError("invalid_config", "tick_rate must be in [1, 30], got " + std::to_string(tick_rate));
  }
  if (human_seat && (*human_seat < 0 || *human_seat >= game.num_players)) {
    throw ProtocolError("invalid_config", "human_seat must be in [0, " + std::to_string(game.num_players) +
                                              ") or \"spectator\"");
  }
  if (static_cast<int>(roster.impostors.size()) != game.num_impostors ||
      static_cast<int>(roster.crew.size()) != game.num_crewmates()) {
    throw ProtocolError("invalid_config", "roster needs " + std::to_string(game.num_impostors) + " impostor and " +
                                              std::to_string(game.num_crewmates()) + " crew policies");
  }
}

SessionConfig session_config_from_json(const json& j) {
  SessionConfig c;
  try {
    if (j.contains("config")) c.game = json_io::config_from_json(j.at("config"));
    if (j.contains("human_seat")) {
      const auto& s = j.at("human_seat");
      if (s.is_string()) {
        if (s.get<std::string>() != "spectator") throw ProtocolError("invalid_config", "human_seat must be a seat or \"spectator\"");
        c.human_seat.reset();
      } else {
        c.human_seat = s.get<int>();
      }
    }
    if (j.contains("roster")) c.roster = parse_roster(j.at("roster").get<std::string>());
    if (j.contains("tick_rate")) c.tick_rate = j.at("tick_rate").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const ProtocolError&) {
    throw;
  } catch (const std::exception& e) {
    throw ProtocolError("invalid_config", e.what());
  }
  c.validate();
  return c;
}

json session_config_to_json(const SessionConfig& c) {
  return {{"config", json_io::config_to_json(c.game)},
          {"human_seat", c.human_seat ? json(*c.human_seat) : json("spectator")},
          {"roster", format_roster(c.roster)},
          {"tick_rate", c.tick_rate},
          {"seed", c.seed}};
}

std::vector<Event> public_events(const std::vector<Event>& events, std::optional<int> seat) {
  auto own = [&](int player) { return seat && *seat == player; };
  std::vector<Event> out;
  for (const auto& e : events) {
    if (const auto* p = std::get_if<event::Pickup>(&e)) {
      if (own(p->player)) out.push_back(e);
    } else if (const auto* d = std::get_if<event::Deposit>(&e)) {
      if (own(d->player)) out.push_back(e);
    } else if (const auto* b = std::get_if<event::FireBeam>(&e)) {
      if (own(b->player)) out.push_back(e);
    } else if (const auto* f = std::get_if<event::Frozen>(&e)) {
      out.push_back(event::Frozen{f->victim, own(f->by) ? f->by : -1});
    } else {
      out.push_back(e);
    }
  }
  return out;
}

json encode_frame(const WorldState& state, std::optional<int> seat, FrameMode mode, int tick,
                  const std::vector<Event>& last_events, const std::string& session_id) {
  DecodedFrame f;
  f.session = session_id;
  f.tick = tick;
  f.phase = state.phase;
  f.mode = mode;
  f.seat = seat;
  if (seat) {
    f.role = state.players.at(*seat).role;
    ObservationBundle obs = observe(state, *seat);
    const auto tiles = view_tiles(state, *seat);
    f.rgb = std::move(obs.rgb);
    f.tiles.assign(tiles.begin(), tiles.end());
    f.inventory_fraction = obs.inventory_fraction;
    f.progress_fraction = obs.progress_fraction;
    f.vote_matrix = std::move(obs.vote_matrix);
  } else {
    SpectatorFrame s = spectator_frame(state);
    f.overlay = std::move(s.overlay);
    f.map_height = s.height;
    f.map_width = s.width;
    f.map_rgb = std::move(s.rgb);
    f.map_tiles = std::move(s.tiles);
  }
  f.events = public_events(last_events, seat);
  return encode_decoded(f);
}

json encode_decoded(const DecodedFrame& f) {
  json j{{"v", kProtocolVersion}, {"type", "frame"}, {"session", f.session}, {"tick", f.tick},
         {"phase", to_string(f.phase)}, {"mode", to_string(f.mode)}};
  if (f.seat) {
    j["seat"] = *f.seat;
    if (f.role) j["role"] = to_string(*f.role);
    json obs = image_to_json(f.mode, f.rgb, f.tiles, kObsHeight, kObsWidth);
    obs["inventory"] = f.inventory_fraction;
    obs["progress"] = f.progress_fraction;
    obs["vote_matrix"] = matrix_to_json(f.vote_matrix, vote_cols(f.vote_matrix));
    j["observation"] = std::move(obs);
  } else {
    j["seat"] = "spectator";
  }
  if (f.overlay) {
    const auto& o = *f.overlay;
    json players = json::array();
    for (const auto& p : o.players) {
      players.push_back({{"seat", p.seat},
                         {"color", p.color},
                         {"status", to_string(p.status)},
                         {"position", json_io::cell_to_json(p.position)},
                         {"orientation", to_string(p.orientation)},
                         {"inventory", p.inventory}});
    }
    json map = image_to_json(f.mode, f.map_rgb, f.map_tiles, f.map_height, f.map_width);
    map["height"] = f.map_height;
    map["width"] = f.map_width;
    j["spectator"] = {{"progress", o.progress},
                      {"progress_fraction", o.progress_fraction},
                      {"fuel_goal", o.fuel_goal},
                      {"phase", to_string(o.phase)},
                      {"situation_clock", o.situation_clock},
                      {"voting_clock", o.voting_clock},
                      {"episode_clock", o.episode_clock},
                      {"players", std::move(players)},
                      {"vote_matrix", matrix_to_json(o.vote_matrix, vote_cols(o.vote_matrix))},
                      {"map", std::move(map)}};
  }
  json events = json::array();
  for (const auto& e : f.events) events.push_back(wire_event(e));
  j["events"] = std::move(events);
  return j;
}

DecodedFrame decode_frame(const json& j) {
  DecodedFrame f;
  try {
    if (j.at("v").get<int>() != kProtocolVersion) throw ProtocolError("bad_version", "unsupported protocol version");
    if (j.at("type") != "frame") bad_frame("not a frame message");
    f.session = j.at("session").get<std::string>();
    f.tick = j.at("tick").get<int>();
    f.phase = phase_from_string(j.at("phase").get<std::string>());
    f.mode = frame_mode_from_string(j.at("mode").get<std::string>());
    if (!j.at("seat").is_string()) {
      f.seat = j.at("seat").get<int>();
      if (j.contains("role")) f.role = role_from_string(j.at("role").get<std::string>());
      const auto& obs = j.at("observation");
      image_from_json(obs, f.mode, kObsHeight, kObsWidth, f.rgb, f.tiles);
      f.inventory_fraction = obs.at("inventory").get<float>();
      f.progress_fraction = obs.at("progress").get<float>();
      f.vote_matrix = matrix_from_json(obs.at("vote_matrix"));
    }
    if (j.contains("spectator")) {
      const auto& s = j.at("spectator");
      SpectatorOverlay o;
      o.progress = s.at("progress").get<int>();
      o.progress_fraction = s.at("progress_fraction").get<double>();
      o.fuel_goal = s.at("fuel_goal").get<int>();
      o.phase = phase_from_string(s.at("phase").get<std::string>());
      o.situation_clock = s.at("situation_clock").get<int>();
      o.voting_clock = s.at("voting_clock").get<int>();
      o.episode_clock = s.at("episode_clock").get<int>();
      for (const auto& p : s.at("players")) {
        o.players.push_back({p.at("seat").get<int>(), p.at("color").get<int>(),
                             status_from_string(p.at("status").get<std::string>()),
                             json_io::cell_from_json(p.at("position")),
                             direction_from_string(p.at("orientation").get<std::string>()),
                             p.at("inventory").get<int>()});
      }
      o.vote_matrix = matrix_from_json(s.at("vote_matrix"));
      const auto& map = s.at("map");
      f.map_height = map.at("height").get<int>();
      f.map_width = map.at("width").get<int>();
      if (f.map_height <= 0 || f.map_width <= 0 || f.map_height % kSpritePixels || f.map_width % kSpritePixels) {
        bad_frame("map size must be a positive multiple of the sprite size");
      }
      image_from_json(map, f.mode, f.map_height, f.map_width, f.map_rgb, f.map_tiles);
      f.overlay = std::move(o);
    }
    for (const auto& e : j.at("events")) f.events.push_back(event_from_wire(e));
  } catch (const ProtocolError&) {
    throw;
  } catch (const std::exception& e) {
    bad_frame(e.what());
  }
  return f;
}

json error_message(const std::string& code, const std::string& detail) {
  return {{"v", kProtocolVersion}, {"type", "error"}, {"code", code}, {"detail", detail}};
}

json notice_message(const std::string& code, const std::string& detail) {
  return {{"v", kProtocolVersion}, {"type", "notice"}, {"code", code}, {"detail", detail}};
}

std::vector<std::uint8_t> encode_png(const std::vector<std::uint8_t>& rgb, int height, int width) {
  if (height <= 0 || width <= 0 || rgb.size() != static_cast<std::size_t>(height) * width * 3) {
    throw std::invalid_argument("encode_png: buffer does not match the image size");
  }
  std::vector<std::uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("PNG encoding failed");
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t len) {
        auto* sink = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
        sink->insert(sink->end(), data, data + len);
      },
      nullptr);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(&rgb[static_cast<std::size_t>(y) * width * 3]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::vector<std::uint8_t> decode_png(const std::vector<std::uint8_t>& data, int* height, int* width) {
  struct Cursor {
    const std::vector<std::uint8_t>* data;
    std::size_t offset;
  } cursor{&data, 0};
  if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0) throw ProtocolError("bad_frame", "not a PNG image");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  std::vector<std::uint8_t> rgb;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ProtocolError("bad_frame", "corrupt PNG image");
  }
  png_set_read_fn(png, &cursor, [](png_structp p, png_bytep out, png_size_t len) {
    auto* c = static_cast<Cursor*>(png_get_io_ptr(p));
    if (c->offset + len > c->data->size()) png_error(p, "truncated");
    std::memcpy(out, c->data->data() + c->offset, len);
    c->offset += len;
  });
  png_read_info(png, info);
  if (png_get_color_type(png, info) != PNG_COLOR_TYPE_RGB || png_get_bit_depth(png, info) != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ProtocolError("bad_frame", "expected an 8-bit RGB PNG");
  }
  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  rgb.resize(static_cast<std::size_t>(h) * w * 3);
  for (int y = 0; y < h; ++y) png_read_row(png, &rgb[static_cast<std::size_t>(y) * w * 3], nullptr);
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  *height = h;
  *width = w;
  return rgb;
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out(b64::encoded_size(bytes.size()), '\0');
  out.resize(b64::encode(out.data(), bytes.data(), bytes.size()));
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  std::vector<std::uint8_t> out(b64::decoded_size(text.size()));
  const auto [written, read] = b64::decode(out.data(), text.data(), text.size());
  // The decoder stops at padding; anything else left over is malformed.
  if (text.find_first_not_of('=', read) != std::string::npos || text.size() - read > 2) throw ProtocolError("bad_frame", "invalid base64 payload");
  out.resize(written);
  return out;
}

}  // namespace hidden_agenda::service
