#include "gridlab/rws.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "embedded_data.h"
#include "gridlab/errors.h"
#include "gridlab/spatial.h"

namespace gridlab::rws {

namespace {

constexpr int kWidth = 24;
constexpr int kHeight = 16;

const std::vector<std::string>& Layers() {
  static const std::vector<std::string> layers = {"logic", "lowerPhysical", "upperPhysical",
                                                  "overlay"};
  return layers;
}

const std::vector<StateDescriptor>& States() {
  static const std::vector<StateDescriptor> states = {
      {"wall", "upperPhysical", "wall", {}, ""},
      {"spawnPoint", "logic", "", {}, ""},
      {"rock", "lowerPhysical", "rock", {"resources"}, ""},
      {"paper", "lowerPhysical", "paper", {"resources"}, ""},
      {"scissors", "lowerPhysical", "scissors", {"resources"}, ""},
      {"consumed", "logic", "", {}, ""},
      {"avatar0", "upperPhysical", "avatar0", {"players"}, "avatar"},
      {"avatar1", "upperPhysical", "avatar1", {"players"}, "avatar"},
  };
  return states;
}

int ParseInt(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": '" + std::string(s) + "' is not an integer");
  }
  return v;
}

int ParsePositive(std::string_view s, std::string_view what) {
  const int v = ParseInt(s, what);
  if (v < 1) throw ConfigError(std::string(what) + " must be at least 1");
  return v;
}

std::string FormatWindow(const WindowSpec& w) {
  return std::to_string(w.forward) + " " + std::to_string(w.backward) + " " +
         std::to_string(w.left) + " " + std::to_string(w.right);
}

// Facing toward the map centre along the dominant axis; vertical wins ties.
Orientation FacingTowardCentre(Vec2 cell, int width, int height) {
  const int dx2 = (width - 1) - 2 * cell.x;
  const int dy2 = (height - 1) - 2 * cell.y;
  if (std::abs(dy2) >= std::abs(dx2)) {
    return dy2 > 0 ? Orientation::kSouth : Orientation::kNorth;
  }
  return dx2 > 0 ? Orientation::kEast : Orientation::kWest;
}

std::vector<double> ToVector(const ResourceVector& v) { return {v[0], v[1], v[2]}; }

}  // namespace

bool OnSimplex(const ResourceVector& v, double tolerance) {
  double sum = 0;
  for (double x : v) {
    if (!std::isfinite(x) || x < -tolerance) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= tolerance;
}

ResourceVector Commitment(const ResourceCounts& counts) {
  const double denom = 3.0 + counts.total();
  return {(1.0 + counts.n[0]) / denom, (1.0 + counts.n[1]) / denom,
          (1.0 + counts.n[2]) / denom};
}

InteractionRewards ResolveInteraction(const ResourceVector& v_row, const ResourceVector& v_col) {
  if (!OnSimplex(v_row) || !OnSimplex(v_col)) {
    throw ConfigError("resource vectors must lie on the 2-simplex");
  }
  // Summed over antisymmetric pairs so that v vs v cancels exactly.
  double r = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      r += kPayoff[i][j] * (v_row[i] * v_col[j] - v_row[j] * v_col[i]);
    }
  }
  return {r, -r};
}

std::string_view DefaultMapText() { return data::RwsMap(); }
std::string_view DefaultConfigText() { return data::RwsConfig(); }
std::string_view DefaultSpriteText() { return data::RwsSprites(); }

Config ParseConfig(std::string_view text, Config base) {
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty() || w[0][0] == '#') continue;
    const std::string where = "config line " + std::to_string(line_no);
    auto expect = [&](std::size_t n) {
      if (w.size() != n + 1) {
        throw ConfigError(where + ": '" + w[0] + "' takes " + std::to_string(n) + " value(s)");
      }
    };
    if (w[0] == "timer") {
      expect(1);
      base.timer = ParsePositive(w[1], where + " timer");
    } else if (w[0] == "beam_length") {
      expect(1);
      base.beam_length = ParsePositive(w[1], where + " beam_length");
    } else if (w[0] == "beam_width") {
      expect(1);
      base.beam_width = ParsePositive(w[1], where + " beam_width");
    } else if (w[0] == "beam_cooldown") {
      expect(1);
      base.beam_cooldown = ParsePositive(w[1], where + " beam_cooldown");
    } else if (w[0] == "window") {
      expect(4);
      int v[4];
      for (int i = 0; i < 4; ++i) {
        v[i] = ParseInt(w[i + 1], where + " window");
        if (v[i] < 0) throw ConfigError(where + ": window extents must be non-negative");
      }
      base.window = WindowSpec{v[0], v[1], v[2], v[3]};
    } else {
      throw ConfigError(where + ": unknown key '" + w[0] + "'");
    }
  }
  return base;
}

Config DefaultConfig() {
  Config c;
  c.map = ParseMapText(DefaultMapText());
  return ParseConfig(DefaultConfigText(), std::move(c));
}

SpriteSet DefaultSprites() { return SpriteSet::Parse(DefaultSpriteText()); }

RunningWithScissors::RunningWithScissors(Config config, SpriteSet sprites)
    : base_(std::move(config)), sprites_(std::move(sprites)), update_order_{{"players", 1.0}} {
  if (base_.map.width() != kWidth || base_.map.height() != kHeight) {
    throw ConfigError("the map must be 24x16, got " + std::to_string(base_.map.width()) + "x" +
                      std::to_string(base_.map.height()));
  }
  int found = 0;
  for (int y = 0; y < kHeight; ++y) {
    for (int x = 0; x < kWidth; ++x) {
      for (const auto& s : base_.map.legend.at(base_.map.at(x, y))) {
        if (s != "spawnPoint") continue;
        if (found < 2) spawns_[found] = Vec2{x, y};
        ++found;
      }
    }
  }
  if (found != 2) {
    throw ConfigError("the map needs exactly 2 spawn points, found " + std::to_string(found));
  }
  World world(kWidth, kHeight, Layers(), States(), 0);
  SpawnMap(world, base_.map);
  for (int r = 0; r < 3; ++r) resource_states_[r] = world.State(kResourceNames[r]);
  avatar_states_ = {world.State("avatar0"), world.State("avatar1")};
  consumed_state_ = world.State("consumed");
  avatar_layer_ = world.Layer(kAvatarLayer);
  resource_layer_ = world.Layer(kResourceLayer);
  RegisterCallbacks(world);
  renderer_ = std::make_unique<Renderer>(world, sprites_);
  template_ = std::make_unique<World>(std::move(world));
  episode_config_ = base_;
}

ActionSpec RunningWithScissors::action_spec() const {
  return ActionSpec{{"noop", "forward", "backward", "strafe_left", "strafe_right", "turn_left",
                     "turn_right", "fire_beam"}};
}

ObservationSpec RunningWithScissors::observation_spec(const EnvOptions& options) const {
  ObservationSpec spec;
  if (options.render_observations) {
    const int tile = sprites_.tile_size();
    spec.push_back({"RGB",
                    DType::kUint8,
                    {base_.window.height_cells() * tile, base_.window.width_cells() * tile, 3}});
  }
  spec.push_back({"INVENTORY", DType::kFloat64, {3}});
  return spec;
}

void RunningWithScissors::DeclareProperties(PropertyTree& properties) const {
  auto positive = [](std::string name) {
    return [name](const std::string& v) { ParsePositive(v, name); };
  };
  properties.Declare("world/width", std::to_string(kWidth), false);
  properties.Declare("world/height", std::to_string(kHeight), false);
  properties.Declare("rws/window", FormatWindow(base_.window), false);
  properties.Declare("rws/tile", std::to_string(sprites_.tile_size()), false);
  properties.Declare("rws/timer", std::to_string(base_.timer), true, positive("rws/timer"));
  properties.Declare("rws/beam_length", std::to_string(base_.beam_length), true,
                     positive("rws/beam_length"));
  properties.Declare("rws/beam_width", std::to_string(base_.beam_width), true,
                     positive("rws/beam_width"));
  properties.Declare("rws/beam_cooldown", std::to_string(base_.beam_cooldown), true,
                     positive("rws/beam_cooldown"));
}

void RunningWithScissors::RegisterCallbacks(World& world) {
  for (int r = 0; r < 3; ++r) {
    CallbackTable table;
    table.on_contact_enter.emplace_back(
        "avatar", [this](World& w, PieceId self, PieceId other) { Pickup(w, other, self); });
    world.RegisterCallbacks(kResourceNames[r], std::move(table));
  }
  for (const char* name : {"avatar0", "avatar1"}) {
    CallbackTable table;
    table.on_update.emplace_back("players", [this](World&, PieceId self) {
      const int p = PlayerOf(self);
      if (p >= 0 && cooldown_[p] > 0) --cooldown_[p];
    });
    table.on_hit.emplace_back(std::string(kBeamName), [this](World& w, PieceId self,
                                                             PieceId source) {
      ResolveZap(w, self, source);
    });
    world.RegisterCallbacks(name, std::move(table));
  }
}

World RunningWithScissors::BuildEpisode(EpisodeContext& ctx, std::uint64_t seed) {
  ctx_ = &ctx;
  episode_config_ = base_;
  const PropertyTree& props = ctx.properties();
  episode_config_.timer = ParsePositive(props.Read("rws/timer"), "rws/timer");
  episode_config_.beam_length = ParsePositive(props.Read("rws/beam_length"), "rws/beam_length");
  episode_config_.beam_width = ParsePositive(props.Read("rws/beam_width"), "rws/beam_width");
  episode_config_.beam_cooldown =
      ParsePositive(props.Read("rws/beam_cooldown"), "rws/beam_cooldown");

  World world = *template_;
  world.rng().Seed(seed);
  counts_ = {};
  cooldown_ = {};
  const int swap = static_cast<int>(world.rng().Below(2));
  for (int p = 0; p < 2; ++p) {
    const Vec2 cell = spawns_[p ^ swap];
    avatars_[p] = world.AddPiece(avatar_states_[p], GridPosition{cell.x, cell.y, avatar_layer_},
                                 FacingTowardCentre(cell, kWidth, kHeight));
  }
  return world;
}

int RunningWithScissors::PlayerOf(PieceId avatar) const {
  for (int p = 0; p < 2; ++p) {
    if (avatars_[p] == avatar) return p;
  }
  return -1;
}

int RunningWithScissors::ResourceOf(StateIndex state) const {
  for (int r = 0; r < 3; ++r) {
    if (resource_states_[r] == state) return r;
  }
  return -1;
}

void RunningWithScissors::Pickup(World& world, PieceId avatar, PieceId resource) {
  const Piece& piece = world.piece(resource);
  const int type = ResourceOf(piece.state);
  const int player = PlayerOf(avatar);
  if (type < 0 || player < 0 || !piece.position) return;
  ++counts_[player].n[type];
  if (world.SetState(resource, consumed_state_) == StateChange::kBlocked) {
    world.RemovePiece(resource);
  }
  world.RaiseEvent("pickup", {{"player", static_cast<double>(player)},
                              {"resource", std::string(kResourceNames[type])}});
}

ZapResult RunningWithScissors::FireBeam(EpisodeContext& ctx, int player) {
  World& world = ctx.world();
  const PieceId zapper = avatars_[player];
  const Piece& self = world.piece(zapper);
  if (!self.position) throw InvalidPiece("zapper is off the board");
  const Vec2 origin = self.position->cell();
  const Vec2 forward = ForwardOf(self.orientation);
  const Vec2 right = RightOf(self.orientation);
  cooldown_[player] = episode_config_.beam_cooldown;

  // Parallel rays, centre first, then alternating left and right.
  const int width = episode_config_.beam_width;
  const int lo = -(width - 1) / 2;
  const int hi = width / 2;
  std::vector<int> laterals = {0};
  for (int k = 1; k <= std::max(-lo, hi); ++k) {
    if (-k >= lo) laterals.push_back(-k);
    if (k <= hi) laterals.push_back(k);
  }
  PieceId best;
  int best_distance = std::numeric_limits<int>::max();
  for (int lateral : laterals) {
    const Vec2 start = origin + right * lateral;
    if (!world.InBounds(start)) continue;
    if (lateral != 0) {
      // A side ray starts beside the zapper; whatever stands there takes it.
      const PieceId at = world.PieceAt(start, avatar_layer_);
      if (at.valid()) {
        if (PlayerOf(at) >= 0 && best_distance > 0) {
          best = at;
          best_distance = 0;
        }
        continue;
      }
    }
    const RayResult ray = Raycast(world, GridPosition{start.x, start.y, avatar_layer_},
                                  forward * episode_config_.beam_length);
    if (ray.kind != RayResult::Kind::kHit || PlayerOf(ray.piece) < 0) continue;
    if (ray.distance < best_distance) {
      best = ray.piece;
      best_distance = ray.distance;
    }
  }
  if (!best.valid()) return {};
  world.HitPiece(best, kBeamName, zapper);
  return {true, best};
}

void RunningWithScissors::ResolveZap(World& world, PieceId target, PieceId zapper) {
  const int row = PlayerOf(zapper);
  const int col = PlayerOf(target);
  if (row < 0 || col < 0 || row == col || ctx_ == nullptr || ctx_->terminated()) return;
  const ResourceVector v_row = Commitment(counts_[row]);
  const ResourceVector v_col = Commitment(counts_[col]);
  const InteractionRewards r = ResolveInteraction(v_row, v_col);
  ctx_->AddReward(row, r.row);
  ctx_->AddReward(col, r.col);
  world.RaiseEvent("interaction", {{"row_player", static_cast<double>(row)},
                                   {"col_player", static_cast<double>(col)},
                                   {"row_vector", ToVector(v_row)},
                                   {"col_vector", ToVector(v_col)},
                                   {"row_reward", r.row},
                                   {"col_reward", r.col}});
  ctx_->Terminate("interaction");
}

void RunningWithScissors::ApplyAction(EpisodeContext& ctx, int player, int action) {
  World& world = ctx.world();
  const PieceId avatar = avatars_[player];
  switch (action) {
    case kNoop: break;
    case kForward: world.MovePiece(avatar, RelativeMove::kForward); break;
    case kBackward: world.MovePiece(avatar, RelativeMove::kBackward); break;
    case kStrafeLeft: world.MovePiece(avatar, RelativeMove::kStrafeLeft); break;
    case kStrafeRight: world.MovePiece(avatar, RelativeMove::kStrafeRight); break;
    case kTurnLeft: world.TurnPiece(avatar, Turn::kLeft); break;
    case kTurnRight: world.TurnPiece(avatar, Turn::kRight); break;
    case kFireBeam:
      if (cooldown_[player] == 0) FireBeam(ctx, player);
      break;
    default: throw ConfigError("unknown action " + std::to_string(action));
  }
}

void RunningWithScissors::EndStep(EpisodeContext& ctx) {
  if (!ctx.terminated() && ctx.step() >= episode_config_.timer) ctx.Terminate("timer");
}

void RunningWithScissors::Observe(EpisodeContext& ctx, int player, std::span<Tensor> out,
                                  const EnvOptions& options) {
  std::size_t i = 0;
  if (options.render_observations) {
    // Render straight into the tensor's buffer.
    Tensor& rgb = out[i++];
    frame_.pixels.swap(rgb.bytes);
    renderer_->RenderWindow(ctx.world(), avatars_[player], episode_config_.window, frame_);
    frame_.pixels.swap(rgb.bytes);
  }
  Tensor& inventory = out[i];
  for (int r = 0; r < 3; ++r) inventory.values[r] = counts_[player].n[r];
}

void RunningWithScissors::RenderGlobal(const World& world, Frame& out) const {
  renderer_->RenderGlobal(world, out);
}

EventPayload RunningWithScissors::PlayerSummary(const EpisodeContext& ctx, int player) const {
  const Piece& piece = ctx.world().piece(avatars_[player]);
  EventPayload summary;
  if (piece.position) {
    summary["x"] = static_cast<double>(piece.position->x);
    summary["y"] = static_cast<double>(piece.position->y);
  }
  summary["orientation"] = std::string(ToString(piece.orientation));
  const auto& n = counts_[player].n;
  summary["inventory"] = std::vector<double>{double(n[0]), double(n[1]), double(n[2])};
  summary["commitment"] = ToVector(Commitment(counts_[player]));
  summary["cooldown"] = static_cast<double>(cooldown_[player]);
  return summary;
}

}  // namespace gridlab::rws
