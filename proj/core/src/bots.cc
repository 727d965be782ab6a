#include "gridlab/bots.h"

#include <array>
#include <optional>

#include "gridlab/errors.h"
#include "gridlab/rws.h"

namespace gridlab {

namespace {

class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  int Act(const Env& env, int) override {
    return static_cast<int>(rng_.Below(static_cast<std::uint64_t>(env.action_spec().size())));
  }

 private:
  Rng rng_;
};

class NoopPolicy : public Policy {
 public:
  std::string name() const override { return "noop"; }
  int Act(const Env&, int) override { return 0; }
};

constexpr std::array<Orientation, 4> kDirections = {Orientation::kNorth, Orientation::kEast,
                                                    Orientation::kSouth, Orientation::kWest};

// Gathers `quota` resources (of `resource`, or of any type when -1), then
// hunts the opponent.
class RwsScriptedPolicy : public Policy {
 public:
  RwsScriptedPolicy(std::string name, int resource, int quota, std::uint64_t seed)
      : name_(std::move(name)), resource_(resource), quota_(quota), rng_(seed) {}

  std::string name() const override { return name_; }

  int Act(const Env& env, int player) override {
    const auto* def = dynamic_cast<const rws::RunningWithScissors*>(&env.definition());
    if (def == nullptr) throw ConfigError("policy '" + name_ + "' only plays rws");
    const World& world = env.world();
    const Piece& me = world.piece(def->avatar(player));
    if (!me.position) return rws::kNoop;

    const auto& counts = def->counts(player);
    const int have = resource_ < 0 ? counts.total() : counts.n[resource_];
    if (have < quota_) {
      if (auto step = Gather(world, *def, me)) return MoveToward(me.orientation, *step);
    }
    return Hunt(world, *def, player, me);
  }

 private:
  struct Grid {
    int width;
    std::vector<std::uint8_t> blocked;  // upper layer occupied
    std::vector<std::uint8_t> avoid;    // resource we do not want to pick up
    std::vector<std::uint8_t> goal;
    std::size_t at(Vec2 c) const { return static_cast<std::size_t>(c.y) * width + c.x; }
  };

  Grid MakeGrid(const World& world, const rws::RunningWithScissors& def, const Piece& me,
                bool avoid_all) const {
    Grid g{world.width(), {}, {}, {}};
    const std::size_t n = static_cast<std::size_t>(world.width()) * world.height();
    g.blocked.assign(n, 0);
    g.avoid.assign(n, 0);
    g.goal.assign(n, 0);
    for (int y = 0; y < world.height(); ++y) {
      for (int x = 0; x < world.width(); ++x) {
        const Vec2 c{x, y};
        const PieceId upper = world.PieceAt(c, def.avatar_layer());
        g.blocked[g.at(c)] = upper.valid() && upper != me.id;
        const PieceId lower = world.PieceAt(c, def.resource_layer());
        if (!lower.valid()) continue;
        const int type = def.ResourceOf(world.piece(lower).state);
        if (type < 0) continue;
        const bool wanted = !avoid_all && (resource_ < 0 || type == resource_);
        if (wanted) {
          g.goal[g.at(c)] = 1;
        } else if (resource_ < 0 || type != resource_) {
          g.avoid[g.at(c)] = 1;
        }
      }
    }
    return g;
  }

  // First step of a shortest path from `from` to any goal cell, or nullopt.
  static std::optional<Orientation> Search(const World& world, const Grid& g, Vec2 from,
                                           bool use_avoid) {
    const std::size_t n = g.blocked.size();
    std::vector<int> first(n, -1);  // first-step direction per reached cell
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<Vec2> queue = {from};
    seen[g.at(from)] = 1;
    if (g.goal[g.at(from)]) return std::nullopt;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vec2 c = queue[head];
      for (int d = 0; d < 4; ++d) {
        const Vec2 next = c + ForwardOf(kDirections[d]);
        if (!world.InBounds(next)) continue;
        const std::size_t i = g.at(next);
        if (seen[i] || g.blocked[i] || (use_avoid && g.avoid[i])) continue;
        seen[i] = 1;
        first[i] = head == 0 ? d : first[g.at(c)];
        if (g.goal[i]) return kDirections[first[i]];
        queue.push_back(next);
      }
    }
    return std::nullopt;
  }

  static std::optional<Orientation> SearchPreferAvoiding(const World& world, const Grid& g,
                                                         Vec2 from) {
    if (auto step = Search(world, g, from, true)) return step;
    return Search(world, g, from, false);
  }

  std::optional<Orientation> Gather(const World& world, const rws::RunningWithScissors& def,
                                    const Piece& me) const {
    const Grid g = MakeGrid(world, def, me, false);
    return SearchPreferAvoiding(world, g, me.position->cell());
  }

  int Hunt(const World& world, const rws::RunningWithScissors& def, int player,
           const Piece& me) {
    const Piece& opponent = world.piece(def.avatar(1 - player));
    if (!opponent.position) return rws::kNoop;
    const Vec2 here = me.position->cell();
    const Vec2 target = opponent.position->cell();
    const int range = def.config().beam_length;

    Grid g = MakeGrid(world, def, me, true);
    // Cells in line with the opponent and within range, with a clear line.
    std::array<std::optional<Orientation>, 4> facing_at_here{};
    for (int d = 0; d < 4; ++d) {
      const Vec2 step = ForwardOf(kDirections[d]);
      for (int k = 1; k <= range; ++k) {
        const Vec2 c = target + step * k;
        if (!world.InBounds(c) || g.blocked[g.at(c)]) break;
        g.goal[g.at(c)] = 1;
        if (c == here) facing_at_here[d] = Reverse(kDirections[d]);
      }
    }
    for (const auto& need : facing_at_here) {
      if (!need) continue;
      const int q = QuarterTurns(me.orientation, *need);
      if (q == 0) return def.cooldown(player) == 0 ? rws::kFireBeam : rws::kNoop;
      return q == 3 ? rws::kTurnLeft : rws::kTurnRight;
    }
    // Two chasers mirroring each other can circle forever; pausing now and
    // then lets one of them line up.
    if (rng_.Bernoulli(kPauseProbability)) return rws::kNoop;
    if (auto step = SearchPreferAvoiding(world, g, here)) return MoveToward(me.orientation, *step);
    return rws::kNoop;
  }

  static int MoveToward(Orientation facing, Orientation direction) {
    switch (QuarterTurns(facing, direction)) {
      case 0: return rws::kForward;
      case 1: return rws::kStrafeRight;
      case 2: return rws::kBackward;
      default: return rws::kStrafeLeft;
    }
  }

  static constexpr double kPauseProbability = 0.2;

  std::string name_;
  int resource_;
  int quota_;
  Rng rng_;
};

}  // namespace

std::vector<std::string> AvailablePolicies() {
  return {"random", "noop", "collect-rock", "collect-paper", "collect-scissors", "hunter"};
}

std::unique_ptr<Policy> MakePolicy(std::string_view name, std::uint64_t seed) {
  if (name == "random") return std::make_unique<RandomPolicy>(seed);
  if (name == "noop") return std::make_unique<NoopPolicy>();
  if (name == "hunter") return std::make_unique<RwsScriptedPolicy>("hunter", -1, 2, seed);
  for (int r = 0; r < 3; ++r) {
    const std::string full = "collect-" + std::string(rws::kResourceNames[r]);
    if (name == full) return std::make_unique<RwsScriptedPolicy>(full, r, 3, seed);
  }
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

}  // namespace gridlab
