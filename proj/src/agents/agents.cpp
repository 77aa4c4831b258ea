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

#include "hidden_agenda/agents.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

#include "hidden_agenda/perception.hpp"
#include "hidden_agenda/rng.hpp"
#include "hidden_agenda/rules.hpp"

namespace hidden_agenda {
namespace {

constexpr std::pair<PolicyKind, std::string_view> kKindNames[] = {
    {PolicyKind::kRandom, "random"},
    {PolicyKind::kCollectorCrew, "collector"},
    {PolicyKind::kPairedCollectorCrew, "paired_collector"},
    {PolicyKind::kChaserImpostor, "chaser"},
    {PolicyKind::kCamperImpostor, "camper"},
    {PolicyKind::kIdle, "idle"},
};

int chebyshev(Cell a, Cell b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

bool contains(const std::vector<Cell>& cells, Cell c) {
  return std::find(cells.begin(), cells.end(), c) != cells.end();
}

// Shared machinery: perception update, travel along distance fields, stuck
// recovery and the final legality guard.
class Scripted : public Policy {
 public:
  Scripted(const PolicySpec& spec, const PolicyContext& ctx)
      : ctx_(ctx),
        spec_(spec),
        see_(ctx),
        nav_(ctx.map),
        rng_(derive_seed(ctx.seed, spec.rng_seed)),
        face_travel_(spec.param("face_travel", 1.0) != 0.0) {}

  PlayerAction act(const ObservationBundle& obs) final {
    const Cell before = see_.localized() ? see_.position() : Cell{-1, -1};
    const bool moved_last = last_.is_move();
    see_.observe(obs);
    if (moved_last && see_.localized() && see_.position() == before) {
      ++stuck_;
    } else if (moved_last) {
      stuck_ = 0;
    }
    PlayerAction a;
    if (!see_.inactive()) a = decide();
    const Phase phase = see_.voting() ? Phase::kVoting : Phase::kSituation;
    if (!action_is_legal(a, ctx_.role, phase, ctx_.config.num_players)) a = PlayerAction::noop();
    see_.commit(a);
    last_ = a;
    return a;
  }

 protected:
  virtual PlayerAction decide() = 0;

  std::vector<Cell> occupied() const {
    std::vector<Cell> cells;
    for (const auto& a : see_.avatars()) cells.push_back(a.cell);
    return cells;
  }

  PlayerAction turn_toward(Direction d) const {
    return d == turn_right(see_.facing()) ? PlayerAction::turn_right() : PlayerAction::turn_left();
  }

  PlayerAction random_step() {
    std::vector<Direction> open;
    const auto blocked = occupied();
    for (int d = 0; d < 4; ++d) {
      const Cell n = see_.position() + forward_vector(static_cast<Direction>(d));
      if (ctx_.map->walkable(n) && !contains(blocked, n)) open.push_back(static_cast<Direction>(d));
    }
    if (open.empty()) return PlayerAction::noop();
    return PlayerAction::move(open[rng_.below(open.size())]);
  }

  // Next action along `field`; Noop once at distance `stop` or closer.
  PlayerAction travel(const std::vector<int>& field, int stop = 0) {
    const Cell pos = see_.position();
    const int here = field[ctx_.map->index(pos)];
    if (here <= stop) return PlayerAction::noop();
    if (here >= Navigator::kUnreachable || stuck_ >= 3) {
      if (stuck_ >= 3) stuck_ = 0;
      return random_step();
    }
    const auto d = nav_.descend(field, pos, occupied(), see_.facing());
    if (!d) return rng_.below(3) == 0 ? random_step() : PlayerAction::noop();
    if (face_travel_ && *d != see_.facing()) return turn_toward(*d);
    return PlayerAction::move(*d);
  }

  const PolicyContext ctx_;
  const PolicySpec spec_;
  Perception see_;
  Navigator nav_;
  CounterRng rng_;
  bool face_travel_;
  int stuck_ = 0;
  PlayerAction last_;
};

// Votes shared by the crew policies: suspicion from beams and freezes.
class CrewBase : public Scripted {
 public:
  CrewBase(const PolicySpec& spec, const PolicyContext& ctx)
      : Scripted(spec, ctx),
        suspicion_(ctx.config.num_players, 0.0),
        follow_votes_(static_cast<int>(spec.param("follow_votes", 0))),
        radius_(static_cast<int>(spec.param("suspicion_radius", 2))),
        quota_(static_cast<int>(spec.param("quota", 0))) {}

 protected:
  // Nearest non-frozen avatar to `cell` among `seen` within the radius,
  // skipping `exclude_color`.
  const SeenAvatar* nearest_to(const std::vector<SeenAvatar>& seen, Cell cell, int exclude_color, int* dist) const {
    const SeenAvatar* best = nullptr;
    int best_d = radius_ + 1;
    for (const auto& a : seen) {
      if (a.frozen || a.color == exclude_color) continue;
      const int d = chebyshev(a.cell, cell);
      if (d < best_d) {
        best_d = d;
        best = &a;
      }
    }
    *dist = best_d;
    return best;
  }

  void accuse(const SeenAvatar* a, double weight) {
    if (!a) return;
    const int seat = a->seat >= 0 ? a->seat : see_.seat_of_color(a->color);
    if (seat >= 0 && seat != ctx_.seat) suspicion_[seat] += weight;
  }

  // Situation frames: beams and bodies in view. First voting step: anyone
  // newly inactive who was in the last situation frame points at whoever
  // stood closest to them.
  void update_suspicion() {
    if (see_.voting()) {
      if (see_.voting_step() == 1) review_round();
      return;
    }
    const auto& beam = see_.beam_cells();
    int d = 0;
    if (!beam.empty()) {
      const SeenAvatar* best = nullptr;
      int best_d = radius_ + 1;
      for (const auto& a : see_.avatars()) {
        if (a.frozen || contains(beam, a.cell)) continue;
        int ad = radius_ + 1;
        for (Cell b : beam) ad = std::min(ad, chebyshev(a.cell, b));
        if (ad < best_d) {
          best_d = ad;
          best = &a;
        }
      }
      accuse(best, best_d <= 1 ? 3.0 : 2.0);
    } else {
      for (int color : see_.newly_frozen()) {
        const auto victim = std::find_if(see_.avatars().begin(), see_.avatars().end(),
                                         [&](const SeenAvatar& a) { return a.color == color; });
        if (victim != see_.avatars().end()) accuse(nearest_to(see_.avatars(), victim->cell, color, &d), 1.0);
      }
    }
    last_frame_ = see_.avatars();
  }

  void review_round() {
    const int n = ctx_.config.num_players;
    if (known_inactive_.empty()) known_inactive_.assign(n, false);
    for (int s = 0; s < n; ++s) {
      if (row_active(s) || known_inactive_[s]) continue;
      known_inactive_[s] = true;
      const int color = see_.color_of_seat(s);
      if (s == ctx_.seat || color < 0) continue;
      const auto victim = std::find_if(last_frame_.begin(), last_frame_.end(),
                                       [&](const SeenAvatar& a) { return a.color == color && !a.frozen; });
      if (victim == last_frame_.end()) continue;
      int d = 0;
      const SeenAvatar* culprit = nearest_to(last_frame_, victim->cell, color, &d);
      accuse(culprit, d <= 1 ? 3.0 : 2.0);
    }
  }

  bool row_active(int seat) const {
    return see_.observation().vote_column(seat) != ctx_.config.num_players + 1;
  }

  int prime_suspect() const {
    int best = -1;
    for (int s = 0; s < ctx_.config.num_players; ++s) {
      if (s == ctx_.seat || suspicion_[s] <= 0.0 || !row_active(s)) continue;
      if (best < 0 || suspicion_[s] > suspicion_[best]) best = s;
    }
    return best;
  }

  // Seat with the most visible votes from others, if it has at least `min`.
  int popular_target(int min) const {
    const int n = ctx_.config.num_players;
    std::vector<int> count(n, 0);
    for (int s = 0; s < n; ++s) {
      if (s == ctx_.seat) continue;
      const int col = see_.observation().vote_column(s);
      if (col < n && col != ctx_.seat && row_active(col)) ++count[col];
    }
    const int best = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
    return min > 0 && count[best] >= min ? best : -1;
  }

  // Casts `target` (or abstains for -1) if the ledger shows otherwise.
  PlayerAction cast(int target) const {
    const int n = ctx_.config.num_players;
    const int shown = see_.observation().vote_column(ctx_.seat);
    if (target >= 0) return shown == target ? PlayerAction::noop() : PlayerAction::vote_for(target);
    if (see_.voting_step() == 1) return PlayerAction::abstain();
    return shown == n ? PlayerAction::noop() : PlayerAction::abstain();
  }

  virtual int fallback_vote() const { return popular_target(follow_votes_); }

  PlayerAction vote() {
    int target = prime_suspect();
    if (target < 0 && see_.voting_step() > 1) target = fallback_vote();
    return cast(target);
  }

  // Fuel loop: nearest available pad until full, then the grate.
  // A positive quota stops collecting after that many deposited units.
  PlayerAction collect() {
    const int inv = see_.inventory();
    if (inv < last_inventory_) deposited_ += last_inventory_ - inv;
    last_inventory_ = inv;
    if (quota_ > 0 && deposited_ >= quota_) return PlayerAction::noop();
    const int cap = ctx_.config.inventory_capacity;
    bool deposit = inv >= cap || (inv > 0 && see_.progress() + inv >= ctx_.config.fuel_goal);
    const auto& pads = ctx_.map->fuel_pads();
    if (!deposit) {
      int best = -1;
      int best_score = Navigator::kUnreachable;
      for (int i = 0; i < static_cast<int>(pads.size()); ++i) {
        if (!see_.pad_available(i)) continue;
        const int score = 2 * nav_.distance(see_.position(), pads[i]) - (see_.pad_in_view(i) ? 1 : 0);
        if (score < best_score) {
          best_score = score;
          best = i;
        }
      }
      if (best >= 0) return travel(nav_.field(pads[best]));
      if (inv > 0) {
        deposit = true;
      } else {
        // Everything known is respawning: head for the nearest pad anyway.
        int nearest = 0;
        for (int i = 1; i < static_cast<int>(pads.size()); ++i) {
          if (nav_.distance(see_.position(), pads[i]) < nav_.distance(see_.position(), pads[nearest])) nearest = i;
        }
        return travel(nav_.field(pads[nearest]));
      }
    }
    return travel(nav_.field(ctx_.map->grates()));
  }

  std::vector<double> suspicion_;
  int follow_votes_;
  int radius_;
  int quota_;
  int deposited_ = 0;
  int last_inventory_ = 0;
  std::vector<SeenAvatar> last_frame_;
  std::vector<bool> known_inactive_;
};

class CollectorCrew final : public CrewBase {
 public:
  using CrewBase::CrewBase;
  PolicyKind kind() const override { return PolicyKind::kCollectorCrew; }

 private:
  PlayerAction decide() override {
    update_suspicion();
    if (see_.voting()) return vote();
    return collect();
  }
};

// Collector that stays near a partner crewmate. The lower seat leads; the
// other follows and only collects on its own after losing the leader.
class PairedCollectorCrew final : public CrewBase {
 public:
  PairedCollectorCrew(const PolicySpec& spec, const PolicyContext& ctx)
      : CrewBase(spec, ctx),
        partner_(ctx.partner_seat),
        leader_(ctx.seat < ctx.partner_seat),
        wait_limit_(static_cast<int>(spec.param("wait_limit", 12))),
        lost_limit_(static_cast<int>(spec.param("lost_limit", 30))) {}
  PolicyKind kind() const override { return PolicyKind::kPairedCollectorCrew; }

 private:
  int fallback_vote() const override {
    const int n = ctx_.config.num_players;
    const int col = see_.observation().vote_column(partner_);
    if (col < n && col != ctx_.seat) return col;
    return popular_target(follow_votes_);
  }

  PlayerAction decide() override {
    update_suspicion();
    if (see_.voting()) return vote();
    const bool partner_active = row_active(partner_);
    if (const auto p = see_.seen_seat(partner_); p && !p->frozen) {
      last_seen_ = p->cell;
      last_seen_time_ = see_.time();
    }
    if (!partner_active || last_seen_time_ < 0) return collect();
    const int since = see_.time() - last_seen_time_;
    const int gap = chebyshev(see_.position(), last_seen_);
    if (leader_) {
      if (since <= 4 && gap <= 2) {
        waited_ = 0;
        return collect();
      }
      if (waited_ < wait_limit_) {
        ++waited_;
        // Look back for the partner every few steps.
        return waited_ % 4 == 1 ? PlayerAction::turn_right() : PlayerAction::noop();
      }
      if (waited_ < wait_limit_ * 3) {
        ++waited_;
        return collect();
      }
      waited_ = 0;
      return collect();
    }
    if (since <= lost_limit_ && gap > 1) return travel(nav_.field(last_seen_), 1);
    if (since > lost_limit_) return collect();
    return PlayerAction::noop();
  }

  int partner_;
  bool leader_;
  int wait_limit_;
  int lost_limit_;
  Cell last_seen_;
  int last_seen_time_ = -1;
  int waited_ = 0;
};

class ImpostorBase : public Scripted {
 public:
  ImpostorBase(const PolicySpec& spec, const PolicyContext& ctx)
      : Scripted(spec, ctx),
        since_fire_(ctx.config.freeze_cooldown),
        fire_prob_(spec.param("fire_prob", 1.0)),
        shot_limit_(static_cast<int>(spec.param("shot_limit", 0))) {}

 protected:
  bool ready() const { return since_fire_ >= ctx_.config.freeze_cooldown; }

  // A positive shot_limit retires the impostor after that many shots.
  bool hunting() const { return shot_limit_ <= 0 || shots_ < shot_limit_; }

  std::vector<Cell> footprint(Direction facing) const {
    return rules::beam_footprint(see_.position(), facing, *ctx_.map, ctx_.config);
  }

  std::vector<const SeenAvatar*> targets() const {
    std::vector<const SeenAvatar*> out;
    for (const auto& a : see_.avatars()) {
      if (!a.frozen) out.push_back(&a);
    }
    return out;
  }

  bool any_in(const std::vector<Cell>& cells) const {
    for (const auto* t : targets()) {
      if (contains(cells, t->cell)) return true;
    }
    return false;
  }

  // Fire if ready and someone is in the footprint; otherwise turn to bring
  // a nearby target into it. Returns Noop if neither applies.
  PlayerAction engage() {
    if (!hunting()) return PlayerAction::noop();
    if (ready() && any_in(footprint(see_.facing()))) {
      return rng_.uniform() < fire_prob_ ? PlayerAction::fire() : PlayerAction::noop();
    }
    if (since_fire_ + 2 < ctx_.config.freeze_cooldown) return PlayerAction::noop();
    for (Direction d : {turn_left(see_.facing()), turn_right(see_.facing()), turn_right(turn_right(see_.facing()))}) {
      if (any_in(footprint(d))) return turn_toward(d);
    }
    return PlayerAction::noop();
  }

  // Mirror the most common visible target vote, abstaining on step one.
  PlayerAction blend_vote() const {
    const int n = ctx_.config.num_players;
    const auto& obs = see_.observation();
    if (see_.voting_step() == 1) return PlayerAction::abstain();
    std::vector<int> count(n, 0);
    for (int s = 0; s < n; ++s) {
      const int col = obs.vote_column(s);
      if (s != ctx_.seat && col < n && col != ctx_.seat) ++count[col];
    }
    const int best = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
    const int shown = obs.vote_column(ctx_.seat);
    if (count[best] > 0) return shown == best ? PlayerAction::noop() : PlayerAction::vote_for(best);
    return shown == n ? PlayerAction::noop() : PlayerAction::abstain();
  }

  PlayerAction finish(PlayerAction a) {
    if (a.kind == ActionKind::kFire) {
      since_fire_ = 0;
      ++shots_;
    }
    return a;
  }

  int since_fire_;
  double fire_prob_;
  int shot_limit_;
  int shots_ = 0;
};

class ChaserImpostor final : public ImpostorBase {
 public:
  ChaserImpostor(const PolicySpec& spec, const PolicyContext& ctx) : ImpostorBase(spec, ctx) {
    anchors_ = ctx.map->fuel_pads();
    anchors_.push_back(ctx.map->grates().front());
    visited_.assign(anchors_.size(), -1);
  }
  PolicyKind kind() const override { return PolicyKind::kChaserImpostor; }

 private:
  PlayerAction decide() override {
    if (see_.voting()) return blend_vote();
    ++since_fire_;
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
      if (chebyshev(anchors_[i], see_.position()) <= 2) visited_[i] = see_.time();
    }
    const PlayerAction e = engage();
    if (e.kind != ActionKind::kNoop) return finish(e);

    const SeenAvatar* target = nullptr;
    int best = Navigator::kUnreachable;
    for (const auto* t : hunting() ? targets() : std::vector<const SeenAvatar*>{}) {
      const int d = nav_.distance(see_.position(), t->cell);
      if (d < best) {
        best = d;
        target = t;
      }
    }
    if (target) {
      chase_ = target->cell;
      chase_time_ = see_.time();
      return travel(nav_.field(target->cell), 1);
    }
    if (hunting() && chase_time_ >= 0 && see_.time() - chase_time_ <= 10 && see_.position() != chase_) {
      return travel(nav_.field(chase_));
    }
    // Patrol: least recently visited anchor, nearest first on ties.
    int pick = 0;
    for (int i = 1; i < static_cast<int>(anchors_.size()); ++i) {
      if (visited_[i] < visited_[pick] ||
          (visited_[i] == visited_[pick] &&
           nav_.distance(see_.position(), anchors_[i]) < nav_.distance(see_.position(), anchors_[pick]))) {
        pick = i;
      }
    }
    patrol_target_ = pick;
    return travel(nav_.field(anchors_[pick]));
  }

 public:
  int patrol_target() const { return patrol_target_; }

 private:
  std::vector<Cell> anchors_;
  std::vector<int> visited_;
  Cell chase_;
  int chase_time_ = -1;
  int patrol_target_ = -1;
};

// Waits beside a fuel pad and fires at whoever comes to collect.
class CamperImpostor final : public ImpostorBase {
 public:
  CamperImpostor(const PolicySpec& spec, const PolicyContext& ctx) : ImpostorBase(spec, ctx) {
    const auto& pads = ctx.map->fuel_pads();
    const int pad = static_cast<int>(spec.param("camp_pad", 0));
    if (pad < 0 || pad >= static_cast<int>(pads.size())) throw ConfigError("camp_pad out of range");
    pad_ = pads[pad];
    // Two cells from the pad on the side closest to the grate, facing it.
    const auto& to_grate = nav_.field(ctx.map->grates());
    int best = Navigator::kUnreachable;
    for (int d = 0; d < 4; ++d) {
      const Direction dir = static_cast<Direction>(d);
      const Cell one = pad_ + forward_vector(dir);
      const Cell two = one + forward_vector(dir);
      if (!ctx.map->walkable(one) || !ctx.map->walkable(two)) continue;
      const int g = to_grate[ctx.map->index(two)];
      if (g < best) {
        best = g;
        spot_ = two;
        face_ = static_cast<Direction>((d + 2) % 4);
      }
    }
  }
  PolicyKind kind() const override { return PolicyKind::kCamperImpostor; }

 private:
  PlayerAction decide() override {
    if (see_.voting()) return blend_vote();
    ++since_fire_;
    const PlayerAction e = engage();
    if (e.kind != ActionKind::kNoop) return finish(e);
    if (see_.position() != spot_) return travel(nav_.field(spot_));
    if (see_.facing() != face_) return turn_toward(face_);
    return PlayerAction::noop();
  }

  Cell pad_;
  Cell spot_;
  Direction face_ = Direction::kNorth;
};

class RandomPolicy final : public Scripted {
 public:
  using Scripted::Scripted;
  PolicyKind kind() const override { return PolicyKind::kRandom; }

 private:
  PlayerAction decide() override {
    const int n = ctx_.config.num_players;
    if (see_.voting()) {
      const int pick = static_cast<int>(rng_.below(n + 1));
      return pick == n ? PlayerAction::abstain() : PlayerAction::vote_for(pick);
    }
    const int options = ctx_.role == Role::kImpostor ? 8 : 7;
    const int pick = static_cast<int>(rng_.below(options));
    if (pick == 0) return PlayerAction::noop();
    if (pick <= 4) return PlayerAction::move(static_cast<Direction>(pick - 1));
    if (pick == 5) return PlayerAction::turn_left();
    if (pick == 6) return PlayerAction::turn_right();
    return PlayerAction::fire();
  }
};

class IdlePolicy final : public Policy {
 public:
  PlayerAction act(const ObservationBundle&) override { return PlayerAction::noop(); }
  PolicyKind kind() const override { return PolicyKind::kIdle; }
};

const std::set<std::string>& allowed_parameters(PolicyKind kind) {
  static const std::set<std::string> none;
  static const std::set<std::string> collector = {"face_travel", "follow_votes", "suspicion_radius", "quota"};
  static const std::set<std::string> paired = {"face_travel", "follow_votes", "suspicion_radius", "quota",
                                               "partner", "wait_limit", "lost_limit"};
  static const std::set<std::string> chaser = {"face_travel", "fire_prob", "shot_limit"};
  static const std::set<std::string> camper = {"face_travel", "fire_prob", "shot_limit", "camp_pad"};
  switch (kind) {
    case PolicyKind::kCollectorCrew: return collector;
    case PolicyKind::kPairedCollectorCrew: return paired;
    case PolicyKind::kChaserImpostor: return chaser;
    case PolicyKind::kCamperImpostor: return camper;
    default: return none;
  }
}

}  // namespace

std::string_view to_string(PolicyKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

PolicyKind policy_kind_from_string(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  throw ConfigError("unknown policy kind '" + std::string(name) + "'");
}

double PolicySpec::param(const std::string& key, double fallback) const {
  const auto it = parameters.find(key);
  return it == parameters.end() ? fallback : it->second;
}

PolicySpec parse_policy_spec(std::string_view text) {
  PolicySpec spec;
  std::string_view body = text;
  if (const auto at = body.find('@'); at != std::string_view::npos) {
    const std::string_view seed = body.substr(at + 1);
    const auto r = std::from_chars(seed.data(), seed.data() + seed.size(), spec.rng_seed);
    if (r.ec != std::errc() || r.ptr != seed.data() + seed.size()) {
      throw ConfigError("bad policy seed in '" + std::string(text) + "'");
    }
    body = body.substr(0, at);
  }
  const auto colon = body.find(':');
  spec.kind = policy_kind_from_string(body.substr(0, colon));
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = body.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("policy parameter needs key=value: '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') throw ConfigError("bad value for policy parameter '" + key + "'");
    spec.parameters[key] = v;
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return spec;
}

std::string format_policy_spec(const PolicySpec& spec) {
  std::ostringstream out;
  out << to_string(spec.kind);
  char sep = ':';
  for (const auto& [k, v] : spec.parameters) {
    out << sep << k << '=' << v;
    sep = ',';
  }
  if (spec.rng_seed != 0) out << '@' << spec.rng_seed;
  return out.str();
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const PolicyContext& context) {
  if (!context.map) throw ConfigError("policy context has no map");
  if (context.seat < 0 || context.seat >= context.config.num_players) throw ConfigError("policy seat out of range");
  const auto& allowed = allowed_parameters(spec.kind);
  for (const auto& [key, value] : spec.parameters) {
    if (!allowed.count(key)) {
      throw ConfigError("policy '" + std::string(to_string(spec.kind)) + "' has no parameter '" + key + "'");
    }
  }
  const bool crew_only = spec.kind == PolicyKind::kCollectorCrew || spec.kind == PolicyKind::kPairedCollectorCrew;
  const bool impostor_only = spec.kind == PolicyKind::kChaserImpostor || spec.kind == PolicyKind::kCamperImpostor;
  if (crew_only && context.role != Role::kCrewmate) {
    throw ConfigError(std::string(to_string(spec.kind)) + " requires the crewmate role");
  }
  if (impostor_only && context.role != Role::kImpostor) {
    throw ConfigError(std::string(to_string(spec.kind)) + " requires the impostor role");
  }
  switch (spec.kind) {
    case PolicyKind::kRandom: return std::make_unique<RandomPolicy>(spec, context);
    case PolicyKind::kCollectorCrew: return std::make_unique<CollectorCrew>(spec, context);
    case PolicyKind::kPairedCollectorCrew:
      if (context.partner_seat < 0 || context.partner_seat >= context.config.num_players ||
          context.partner_seat == context.seat) {
        throw ConfigError("paired_collector needs a partner seat other than its own");
      }
      return std::make_unique<PairedCollectorCrew>(spec, context);
    case PolicyKind::kChaserImpostor: return std::make_unique<ChaserImpostor>(spec, context);
    case PolicyKind::kCamperImpostor: return std::make_unique<CamperImpostor>(spec, context);
    case PolicyKind::kIdle: return std::make_unique<IdlePolicy>();
  }
  throw ConfigError("unhandled policy kind");
}

bool action_is_legal(const PlayerAction& action, Role role, Phase phase, int num_players) {
  switch (action.kind) {
    case ActionKind::kNoop: return true;
    case ActionKind::kFire: return phase == Phase::kSituation && role == Role::kImpostor;
    case ActionKind::kVoteAbstain: return phase == Phase::kVoting;
    case ActionKind::kVoteFor:
      return phase == Phase::kVoting && action.target >= 0 && action.target < num_players;
    default: return phase == Phase::kSituation;
  }
}

}  // namespace hidden_agenda
