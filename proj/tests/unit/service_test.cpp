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

#include <gtest/gtest.h>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <filesystem>
#include <functional>
#include <set>
#include <thread>

#include "hidden_agenda/engine.hpp"
#include "hidden_agenda/service/server.hpp"
#include "hidden_agenda/service/session.hpp"

namespace hidden_agenda::service {
namespace {

const char* kRoster = "chaser:shot_limit=3 / collector collector collector collector";

GameConfig short_game() {
  GameConfig g;
  g.situation_phase_length = 40;
  g.episode_limit = 150;
  return g;
}

SessionConfig config_with(std::optional<int> human, GameConfig game = {}, std::uint64_t seed = 5) {
  SessionConfig c;
  c.game = game;
  c.human_seat = human;
  c.roster = parse_roster(kRoster);
  c.seed = seed;
  return c;
}

std::string code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ProtocolError& e) {
    return e.code();
  }
  return "";
}

// Every frame message addressed to `client`, in order.
std::vector<json> messages_of(const std::vector<Outgoing>& out, ClientId client, const std::string& type) {
  std::vector<json> v;
  for (const auto& o : out) {
    if (o.client == client && o.message.at("type") == type) v.push_back(o.message);
  }
  return v;
}

// Recursively collects object keys.
void collect_keys(const json& j, std::multiset<std::string>& keys) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      keys.insert(k);
      collect_keys(v, keys);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_keys(v, keys);
  }
}

TEST(SessionConfigTest, Validation) {
  EXPECT_NO_THROW(config_with(2).validate());
  EXPECT_NO_THROW(config_with(std::nullopt).validate());
  auto bad_rate = config_with(2);
  bad_rate.tick_rate = 0;
  EXPECT_EQ(code_of([&] { bad_rate.validate(); }), "invalid_config");
  bad_rate.tick_rate = 31;
  EXPECT_EQ(code_of([&] { bad_rate.validate(); }), "invalid_config");
  bad_rate.tick_rate = 30;
  EXPECT_NO_THROW(bad_rate.validate());
  EXPECT_EQ(code_of([&] { config_with(5).validate(); }), "invalid_config");
  auto bad_roster = config_with(2);
  bad_roster.roster = parse_roster("chaser / collector");
  EXPECT_EQ(code_of([&] { bad_roster.validate(); }), "invalid_config");

  EXPECT_EQ(code_of([] { session_config_from_json({{"human_seat", "nobody"}}); }), "invalid_config");
  EXPECT_EQ(code_of([] { session_config_from_json({{"roster", "chaser"}}); }), "invalid_config");
  EXPECT_EQ(code_of([] { session_config_from_json({{"config", {{"fuel_goall", "3"}}}}); }), "invalid_config");
  EXPECT_EQ(code_of([] { Session("x", config_with(1, {}, 1)).tick(); }), "");
  auto bad_param = config_with(1);
  bad_param.roster = parse_roster("chaser:speed=2 / collector collector collector collector");
  EXPECT_EQ(code_of([&] { Session("x", bad_param); }), "invalid_config");

  const auto round = session_config_from_json(session_config_to_json(config_with(3, short_game(), 99)));
  EXPECT_EQ(round.game, short_game());
  EXPECT_EQ(round.human_seat, 3);
  EXPECT_EQ(round.roster, parse_roster(kRoster));
  EXPECT_EQ(round.seed, 99u);
  EXPECT_FALSE(session_config_from_json({{"human_seat", "spectator"}}).human_seat.has_value());
}

TEST(SessionTest, HumanSeatTwoLeavesOtherSeatsToBots) {
  Session s("a", config_with(2));
  EXPECT_EQ(s.bot_seats(), (std::vector<int>{0, 1, 3, 4}));
}

TEST(SessionTest, SpectatorSessionIsAllBotsAndMatchesHarness) {
  Session s("b", config_with(std::nullopt, short_game(), 11));
  EXPECT_EQ(s.bot_seats(), (std::vector<int>{0, 1, 2, 3, 4}));
  auto out = s.join(7, std::nullopt, FrameMode::kSprites);
  const auto created = messages_of(out, 7, "session_created");
  ASSERT_EQ(created.size(), 1u);
  EXPECT_EQ(created[0].at("seat"), "spectator");
  while (!s.finished()) s.tick();
  const EpisodeRecord expected = run_episode(short_game(), 11, parse_roster(kRoster));
  EXPECT_EQ(s.record(), expected);
}

TEST(SessionTest, SeatRules) {
  Session s("c", config_with(2));
  EXPECT_FALSE(s.started());
  s.join(1, 2, FrameMode::kSprites);
  EXPECT_TRUE(s.started());
  EXPECT_EQ(code_of([&] { s.join(2, 2, FrameMode::kSprites); }), "seat_taken");
  EXPECT_EQ(code_of([&] { s.join(2, 0, FrameMode::kSprites); }), "seat_taken");
  EXPECT_EQ(code_of([&] { s.join(2, 7, FrameMode::kSprites); }), "seat_unavailable");
  EXPECT_EQ(code_of([&] { s.join(1, std::nullopt, FrameMode::kSprites); }), "already_joined");
  EXPECT_EQ(code_of([&] { s.join(3, std::nullopt, FrameMode::kPng); }), "");
  EXPECT_EQ(code_of([&] { s.submit(3, 0, "noop"); }), "not_seated");
  s.leave(1);
  EXPECT_EQ(code_of([&] { s.join(2, 2, FrameMode::kSprites); }), "");
}

TEST(SessionTest, LatchingRules) {
  Session s("d", config_with(2));
  s.join(1, 2, FrameMode::kSprites);
  // Silent human: Noop.
  s.tick();
  EXPECT_EQ(s.record().actions[0][2], PlayerAction::noop());
  // Last writer wins within one tick.
  EXPECT_TRUE(s.submit(1, 1, "move_n").empty());
  EXPECT_TRUE(s.submit(1, 1, "turn_left").empty());
  s.tick();
  EXPECT_EQ(s.record().actions[1][2], PlayerAction::turn_left());
  // The latch clears after use.
  s.tick();
  EXPECT_EQ(s.record().actions[2][2], PlayerAction::noop());
  // Past ticks are dropped with a notice, future ones rejected.
  const auto notice = s.submit(1, 1, "fire");
  ASSERT_EQ(notice.size(), 1u);
  EXPECT_EQ(notice[0].message.at("type"), "notice");
  EXPECT_EQ(notice[0].message.at("code"), "stale_action");
  EXPECT_EQ(code_of([&] { s.submit(1, 4, "noop"); }), "future_tick");
  EXPECT_EQ(code_of([&] { s.submit(1, 3, "dance"); }), "bad_action");
  s.tick();
  EXPECT_EQ(s.record().actions[3][2], PlayerAction::noop());
}

TEST(SessionTest, OneEpisodeEndPerClientAndMonotonicTicks) {
  Session s("e", config_with(1, short_game(), 3));
  std::vector<Outgoing> all;
  auto append = [&](std::vector<Outgoing> v) { all.insert(all.end(), v.begin(), v.end()); };
  append(s.join(1, 1, FrameMode::kSprites));
  append(s.join(2, std::nullopt, FrameMode::kSprites));
  int guard = 0;
  while (!s.finished() && guard++ < 10000) {
    if (s.state().phase == Phase::kSituation) append(s.submit(1, s.current_tick(), "move_n"));
    append(s.tick());
  }
  for (int k = 0; k < 5; ++k) append(s.tick());
  for (ClientId c : {1, 2}) {
    const auto ends = messages_of(all, c, "episode_end");
    ASSERT_EQ(ends.size(), 1u) << "client " << c;
    EXPECT_EQ(ends[0].at("outcome"), std::string(to_string(*s.record().outcome)));
    EXPECT_EQ(ends[0].at("returns").get<std::vector<double>>(), s.record().returns);
    const auto frames = messages_of(all, c, "frame");
    ASSERT_EQ(static_cast<int>(frames.size()), s.record().steps + 1);
    for (std::size_t i = 1; i < frames.size(); ++i) {
      EXPECT_EQ(frames[i].at("tick").get<int>(), frames[i - 1].at("tick").get<int>() + 1);
    }
  }
  EXPECT_EQ(code_of([&] { s.join(3, std::nullopt, FrameMode::kSprites); }), "session_over");
  // Lockstep integrity: the record re-simulates exactly.
  const ReplayCheck check = verify_replay(s.record());
  EXPECT_TRUE(check.ok) << check.message;
}

TEST(ProtocolTest, SpriteFrameIsElevenByElevenGrid) {
  const WorldState state = reset(GameConfig{}, 4);
  const json f = encode_frame(state, 3, FrameMode::kSprites, 0, {}, "s");
  const auto& tiles = f.at("observation").at("tiles");
  ASSERT_EQ(tiles.size(), 121u);
  const auto expected = view_tiles(state, 3);
  for (int i = 0; i < 121; ++i) {
    ASSERT_EQ(tiles[i].size(), 5u);
    EXPECT_EQ(tiles[i][0].get<int>(), static_cast<int>(expected[i].terrain));
    EXPECT_EQ(tiles[i][1].get<int>(), expected[i].avatar_color);
    EXPECT_EQ(tiles[i][2].get<int>(), static_cast<int>(expected[i].facing));
  }
  EXPECT_FALSE(f.at("observation").contains("rgb_png"));
  EXPECT_EQ(f.at("observation").at("vote_matrix").size(), 5u);
  EXPECT_EQ(f.at("observation").at("vote_matrix")[0].size(), 7u);
}

TEST(ProtocolTest, PngFrameDecodesToRenderedObservation) {
  Session s("p", config_with(0, short_game(), 8));
  s.join(1, 0, FrameMode::kPng);
  for (int t = 0; t < 30; ++t) {
    const auto out = s.tick();
    const auto frames = messages_of(out, 1, "frame");
    ASSERT_EQ(frames.size(), 1u);
    const auto& b64 = frames[0].at("observation").at("rgb_png").get<std::string>();
    int h = 0;
    int w = 0;
    const auto rgb = decode_png(base64_decode(b64), &h, &w);
    EXPECT_EQ(h, kObsHeight);
    EXPECT_EQ(w, kObsWidth);
    EXPECT_EQ(rgb, render_rgb(s.state(), 0));
    const DecodedFrame d = decode_frame(frames[0]);
    EXPECT_EQ(d.rgb, rgb);
    const auto tiles = view_tiles(s.state(), 0);
    EXPECT_EQ(d.tiles, std::vector<TileCode>(tiles.begin(), tiles.end()));
  }
}

TEST(ProtocolTest, EncodeDecodeIsIdempotent) {
  for (FrameMode mode : {FrameMode::kSprites, FrameMode::kPng}) {
    Session s("r", config_with(2, short_game(), 21));
    s.join(1, 2, mode);
    s.join(2, std::nullopt, mode);
    int checked = 0;
    bool saw_events = false;
    while (!s.finished()) {
      const auto out = s.tick();
      if (s.current_tick() % 7 != 0 && !s.finished()) continue;
      for (const auto& o : out) {
        if (o.message.at("type") != "frame") continue;
        saw_events |= !o.message.at("events").empty();
        EXPECT_EQ(encode_decoded(decode_frame(o.message)), o.message);
        ++checked;
      }
    }
    EXPECT_GT(checked, 10);
    EXPECT_TRUE(saw_events);
  }
  EXPECT_EQ(code_of([] { decode_frame({{"v", 2}, {"type", "frame"}}); }), "bad_version");
  EXPECT_EQ(code_of([] { decode_frame({{"v", 1}, {"type", "frame"}}); }), "bad_frame");
}

TEST(ProtocolTest, SpectatorFrameCarriesStatusesAndProgress) {
  Session s("q", config_with(std::nullopt, short_game(), 2));
  const auto joined = s.join(1, std::nullopt, FrameMode::kSprites);
  const auto frames = messages_of(joined, 1, "frame");
  ASSERT_EQ(frames.size(), 1u);
  const auto& spec = frames[0].at("spectator");
  ASSERT_EQ(spec.at("players").size(), 5u);
  for (const auto& p : spec.at("players")) EXPECT_EQ(p.at("status"), "active");
  EXPECT_EQ(spec.at("progress"), 0);
  EXPECT_EQ(spec.at("fuel_goal"), 32);
  EXPECT_EQ(spec.at("map").at("tiles").size(), 40u * 31u);
  EXPECT_FALSE(frames[0].contains("observation"));
  EXPECT_FALSE(frames[0].contains("role"));
}

TEST(ProtocolTest, PublicEventFiltering) {
  const std::vector<Event> events{event::Pickup{1}, event::Deposit{1, 2}, event::FireBeam{0, {{1, 1}}},
                                  event::Frozen{1, 0}, event::VotingStarted{VotingTrigger::kWitness},
                                  event::VoteCast{3, Vote::for_player(0)}, event::Jailed{0}, event::PhaseEnded{}};
  const auto crew = public_events(events, 1);
  const std::vector<Event> crew_expected{event::Pickup{1}, event::Deposit{1, 2}, event::Frozen{1, -1},
                                         event::VotingStarted{VotingTrigger::kWitness},
                                         event::VoteCast{3, Vote::for_player(0)}, event::Jailed{0},
                                         event::PhaseEnded{}};
  EXPECT_EQ(crew, crew_expected);
  const auto shooter = public_events(events, 0);
  ASSERT_EQ(shooter.size(), 6u);
  EXPECT_EQ(shooter[0], Event(event::FireBeam{0, {{1, 1}}}));
  EXPECT_EQ(shooter[1], Event(event::Frozen{1, 0}));
  const auto spectator = public_events(events, std::nullopt);
  EXPECT_EQ(spectator.size(), 5u);
  EXPECT_EQ(spectator[0], Event(event::Frozen{1, -1}));
}

TEST(ProtocolTest, CrewFramesNeverLeakRoles) {
  int checked_sessions = 0;
  for (std::uint64_t seed = 0; seed < 40 && checked_sessions < 3; ++seed) {
    const WorldState probe = reset(short_game(), seed);
    int crew_seat = -1;
    int impostor_seat = -1;
    for (const auto& p : probe.players) (p.role == Role::kCrewmate ? crew_seat : impostor_seat) = p.id;
    Session s("l", config_with(crew_seat, short_game(), seed));
    std::vector<Outgoing> out = s.join(1, crew_seat, FrameMode::kSprites);
    bool saw_freeze = false;
    while (!s.finished()) {
      auto step = s.tick();
      out.insert(out.end(), step.begin(), step.end());
    }
    for (const auto& o : out) {
      if (o.message.at("type") != "frame") continue;
      std::multiset<std::string> keys;
      collect_keys(o.message, keys);
      EXPECT_EQ(keys.count("role"), 1u);
      EXPECT_EQ(keys.count("roles"), 0u);
      EXPECT_EQ(keys.count("by"), 0u);
      EXPECT_EQ(o.message.at("role"), "crewmate");
      for (const auto& e : o.message.at("events")) {
        EXPECT_NE(e.at("type"), "fire_beam");
        if (e.at("type") == "frozen") saw_freeze = true;
      }
    }
    const bool shots = std::any_of(s.record().events.begin(), s.record().events.end(), [](const auto& step) {
      return std::any_of(step.begin(), step.end(), [](const Event& e) { return std::holds_alternative<event::Frozen>(e); });
    });
    EXPECT_EQ(saw_freeze, shots);
    (void)impostor_seat;
    ++checked_sessions;
  }
  EXPECT_EQ(checked_sessions, 3);
}

TEST(ProtocolTest, ImpostorFramesMarkOnlyOwnRole) {
  const WorldState probe = reset(GameConfig{}, 9);
  int impostor = -1;
  for (const auto& p : probe.players) {
    if (p.role == Role::kImpostor) impostor = p.id;
  }
  const json f = encode_frame(probe, impostor, FrameMode::kSprites, 0, {}, "s");
  EXPECT_EQ(f.at("role"), "impostor");
  std::multiset<std::string> keys;
  collect_keys(f, keys);
  EXPECT_EQ(keys.count("role"), 1u);
}

TEST(ProtocolTest, PngAndBase64RoundTrip) {
  std::vector<std::uint8_t> img(16 * 8 * 3);
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<std::uint8_t>(i * 37);
  int h = 0;
  int w = 0;
  const auto png = encode_png(img, 16, 8);
  EXPECT_EQ(decode_png(png, &h, &w), img);
  EXPECT_EQ(h, 16);
  EXPECT_EQ(w, 8);
  EXPECT_EQ(base64_decode(base64_encode(png)), png);
  EXPECT_EQ(base64_encode({'f', 'o', 'o', 'b'}), "Zm9vYg==");
  EXPECT_EQ(code_of([&] { decode_png({1, 2, 3}, &h, &w); }), "bad_frame");
}

// Real sockets: health endpoint plus a scripted websocket client.
namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

json health(std::uint16_t port) {
  net::io_context ioc;
  tcp::socket socket(ioc);
  socket.connect({net::ip::make_address("127.0.0.1"), port});
  http::request<http::empty_body> req{http::verb::get, "/health", 11};
  req.set(http::field::host, "127.0.0.1");
  http::write(socket, req);
  beast::flat_buffer buffer;
  http::response<http::string_body> res;
  http::read(socket, buffer, res);
  EXPECT_EQ(res.result(), http::status::ok);
  return json::parse(res.body());
}

TEST(ServerTest, ScriptedClientTranscript) {
  const auto dir = std::filesystem::temp_directory_path() / "ha_service_test_records";
  std::filesystem::remove_all(dir);
  ServerOptions options;
  options.port = 0;
  options.grace_seconds = 0.2;
  options.record_dir = dir.string();
  Server server(options);
  std::thread io([&] { server.run(2); });

  EXPECT_EQ(health(server.port()), (json{{"status", "ok"}, {"sessions", 0}, {"protocol", 1}}));

  net::io_context ioc;
  websocket::stream<tcp::socket> ws(ioc);
  ws.next_layer().connect({net::ip::make_address("127.0.0.1"), server.port()});
  ws.handshake("127.0.0.1", "/");
  auto send = [&](const json& j) { ws.write(net::buffer(j.dump())); };
  auto receive = [&] {
    beast::flat_buffer buffer;
    ws.read(buffer);
    return json::parse(beast::buffers_to_string(buffer.data()));
  };

  send({{"v", 9}, {"type", "join"}});
  json m = receive();
  EXPECT_EQ(m.at("type"), "error");
  EXPECT_EQ(m.at("code"), "bad_version");

  GameConfig game = short_game();
  game.episode_limit = 300;
  send({{"v", 1},
        {"type", "create_session"},
        {"config", json_io::config_to_json(game)},
        {"human_seat", 0},
        {"roster", kRoster},
        {"tick_rate", 30},
        {"seed", 17},
        {"mode", "sprites"}});
  m = receive();
  ASSERT_EQ(m.at("type"), "session_created") << m.dump();
  const std::string id = m.at("session");
  EXPECT_EQ(m.at("seat"), 0);
  EXPECT_EQ(health(server.port()).at("sessions"), 1);

  // A second client may watch but not take the seat.
  websocket::stream<tcp::socket> ws2(ioc);
  ws2.next_layer().connect({net::ip::make_address("127.0.0.1"), server.port()});
  ws2.handshake("127.0.0.1", "/");
  ws2.write(net::buffer(json{{"v", 1}, {"type", "join"}, {"session", id}, {"seat", 0}}.dump()));
  beast::flat_buffer b2;
  ws2.read(b2);
  const json taken = json::parse(beast::buffers_to_string(b2.data()));
  EXPECT_EQ(taken.at("code"), "seat_taken");
  ws2.close(websocket::close_code::normal);

  const char* cycle[] = {"move_n", "move_e", "move_s", "move_w", "turn_left", "fire", "noop"};
  int last_tick = -1;
  int frames = 0;
  bool saw_voting = false;
  json end;
  while (true) {
    m = receive();
    if (m.at("type") == "episode_end") {
      end = m;
      break;
    }
    if (m.at("type") != "frame") continue;
    const int tick = m.at("tick");
    EXPECT_GT(tick, last_tick);
    last_tick = tick;
    ++frames;
    const bool voting = m.at("phase") == "voting";
    saw_voting |= voting;
    send({{"v", 1}, {"type", "action"}, {"tick", tick}, {"action", voting ? "vote_1" : cycle[tick % 7]}});
  }
  EXPECT_TRUE(saw_voting);
  EXPECT_GE(frames, 2);
  // Late actions may draw errors or stale notices before the close notice.
  do m = receive();
  while (m.value("code", "") != "session_closed");

  const auto path = dir / ("session_" + id + ".json");
  ASSERT_TRUE(std::filesystem::exists(path));
  const EpisodeRecord record = load_replay(path);
  EXPECT_EQ(std::string(to_string(*record.outcome)), end.at("outcome").get<std::string>());
  EXPECT_EQ(record.steps, last_tick);
  const ReplayCheck check = verify_replay(record);
  EXPECT_TRUE(check.ok) << check.message;
  int human_actions = 0;
  for (const auto& step : record.actions) human_actions += step[0] != PlayerAction::noop();
  EXPECT_GT(human_actions, record.steps / 2);
  EXPECT_EQ(health(server.port()).at("sessions"), 0);

  ws.close(websocket::close_code::normal);
  server.stop();
  io.join();
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace hidden_agenda::service
