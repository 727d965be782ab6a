#ifndef GRIDLAB_RWS_H_
#define GRIDLAB_RWS_H_

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gridlab/env.h"
#include "gridlab/map_text.h"
#include "gridlab/render.h"
#include "gridlab/sprite.h"

// Running With Scissors: two players roam a 24x16 map collecting rock, paper
// and scissors, and the first beam hit resolves a rock-paper-scissors matrix
// game between their resource mixes.
namespace gridlab::rws {

enum class Resource { kRock = 0, kPaper = 1, kScissors = 2 };

inline constexpr std::array<std::string_view, 3> kResourceNames = {"rock", "paper",
                                                                   "scissors"};

// Row player's payoff; rows and columns ordered rock, paper, scissors.
inline constexpr std::array<std::array<int, 3>, 3> kPayoff = {{
    {0, -1, 1},
    {1, 0, -1},
    {-1, 1, 0},
}};

struct ResourceCounts {
  std::array<int, 3> n{};

  int& operator[](Resource r) { return n[static_cast<int>(r)]; }
  int operator[](Resource r) const { return n[static_cast<int>(r)]; }
  int total() const { return n[0] + n[1] + n[2]; }
  bool operator==(const ResourceCounts&) const = default;
};

// Point on the 2-simplex: (rock, paper, scissors) weights summing to 1.
using ResourceVector = std::array<double, 3>;

bool OnSimplex(const ResourceVector& v, double tolerance = 1e-9);

// Pseudo-count commitment: v_i = (1 + n_i) / (3 + n_rock + n_paper + n_scissors).
ResourceVector Commitment(const ResourceCounts& counts);

struct InteractionRewards {
  double row = 0;
  double col = 0;
};

// row = v_rowᵀ A v_col, col = -row. Throws ConfigError for off-simplex input.
InteractionRewards ResolveInteraction(const ResourceVector& v_row, const ResourceVector& v_col);

struct Config {
  MapText map;
  WindowSpec window{3, 1, 2, 2};
  int timer = 1000;        // episode length in steps
  int beam_length = 3;     // cells
  int beam_width = 1;      // parallel rays, centred on the zapper
  int beam_cooldown = 1;   // steps between shots; 1 = every step
};

// Built from the shipped map and config text.
Config DefaultConfig();
SpriteSet DefaultSprites();
std::string_view DefaultMapText();
std::string_view DefaultConfigText();
std::string_view DefaultSpriteText();

// Applies "key value..." lines (timer, beam_length, beam_width,
// beam_cooldown, window F B L R) on top of `base`. Throws ConfigError.
Config ParseConfig(std::string_view text, Config base);

// Action indices.
enum Action : int {
  kNoop = 0,
  kForward,
  kBackward,
  kStrafeLeft,
  kStrafeRight,
  kTurnLeft,
  kTurnRight,
  kFireBeam,
  kNumActions,
};

// Layer and state names used by the environment.
inline constexpr std::string_view kAvatarLayer = "upperPhysical";
inline constexpr std::string_view kResourceLayer = "lowerPhysical";
inline constexpr std::string_view kBeamName = "zap";

struct ZapResult {
  bool hit = false;
  PieceId target;  // valid when hit
};

class RunningWithScissors : public EnvironmentDefinition {
 public:
  // Throws ConfigError unless the map is 24x16 with exactly two spawn points.
  explicit RunningWithScissors(Config config = DefaultConfig(),
                               SpriteSet sprites = DefaultSprites());
  // Callbacks capture `this`.
  RunningWithScissors(const RunningWithScissors&) = delete;
  RunningWithScissors& operator=(const RunningWithScissors&) = delete;

  std::string name() const override { return "rws"; }
  bool SupportsPlayerCount(int num_players) const override { return num_players == 2; }
  ActionSpec action_spec() const override;
  ObservationSpec observation_spec(const EnvOptions& options) const override;
  void DeclareProperties(PropertyTree& properties) const override;
  World BuildEpisode(EpisodeContext& ctx, std::uint64_t seed) override;
  void ApplyAction(EpisodeContext& ctx, int player, int action) override;
  const UpdateOrder& update_order() const override { return update_order_; }
  void EndStep(EpisodeContext& ctx) override;
  void Observe(EpisodeContext& ctx, int player, std::span<Tensor> out,
               const EnvOptions& options) override;
  void RenderGlobal(const World& world, Frame& out) const override;
  EventPayload PlayerSummary(const EpisodeContext& ctx, int player) const override;

  // Casts a beam along the player's facing. The first avatar hit becomes the
  // column player, resolves the matrix game and ends the episode; walls
  // absorb the beam. Throws InvalidPiece when the zapper is off the board.
  ZapResult FireBeam(EpisodeContext& ctx, int player);

  // Credits `avatar` with the resource and consumes it. A resource already
  // consumed is a no-op.
  void Pickup(World& world, PieceId avatar, PieceId resource);

  // Episode state.
  const Config& config() const { return episode_config_; }
  const Config& base_config() const { return base_; }
  PieceId avatar(int player) const { return avatars_[player]; }
  int PlayerOf(PieceId avatar) const;
  const ResourceCounts& counts(int player) const { return counts_[player]; }
  ResourceVector commitment(int player) const { return Commitment(counts_[player]); }
  // Steps until the player may fire again; 0 = ready.
  int cooldown(int player) const { return cooldown_[player]; }
  LayerIndex avatar_layer() const { return avatar_layer_; }
  LayerIndex resource_layer() const { return resource_layer_; }
  // Resource type of a state, or -1 for non-resource states.
  int ResourceOf(StateIndex state) const;
  const SpriteSet& sprites() const { return sprites_; }
  std::array<Vec2, 2> spawn_cells() const { return spawns_; }

 private:
  void RegisterCallbacks(World& world);
  void ResolveZap(World& world, PieceId target, PieceId zapper);

  Config base_;
  SpriteSet sprites_;
  UpdateOrder update_order_;
  std::array<Vec2, 2> spawns_{};
  // Map spawned and callbacks registered; each episode starts from a copy.
  std::unique_ptr<World> template_;

  // Per episode.
  Config episode_config_;
  EpisodeContext* ctx_ = nullptr;
  std::unique_ptr<Renderer> renderer_;
  Frame frame_;
  std::array<PieceId, 2> avatars_{};
  std::array<ResourceCounts, 2> counts_{};
  std::array<int, 2> cooldown_{};
  std::array<StateIndex, 3> resource_states_{};
  std::array<StateIndex, 2> avatar_states_{};
  StateIndex consumed_state_;
  LayerIndex avatar_layer_;
  LayerIndex resource_layer_;
};

}  // namespace gridlab::rws

#endif  // GRIDLAB_RWS_H_
