#ifndef GRIDLAB_ENV_H_
#define GRIDLAB_ENV_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridlab/event.h"
#include "gridlab/properties.h"
#include "gridlab/render.h"
#include "gridlab/scheduler.h"
#include "gridlab/world.h"

namespace gridlab {

enum class DType { kUint8, kFloat64 };

std::string_view ToString(DType t);

struct TensorSpec {
  std::string name;
  DType dtype = DType::kUint8;
  std::vector<int> shape;

  std::size_t num_elements() const;
  bool operator==(const TensorSpec&) const = default;
};

// Observation value. Uint8 data lives in `bytes`, Float64 data in `values`.
struct Tensor {
  DType dtype = DType::kUint8;
  std::vector<int> shape;
  std::vector<std::uint8_t> bytes;
  std::vector<double> values;

  bool Matches(const TensorSpec& spec) const;
};

struct ActionSpec {
  std::vector<std::string> names;  // index 0 is the no-op

  int size() const { return static_cast<int>(names.size()); }
  bool operator==(const ActionSpec&) const = default;
};

using ObservationSpec = std::vector<TensorSpec>;

enum class SeedMode {
  kAdvance,  // episode k uses DeriveSeed(seed, k)
  kFixed,    // every episode uses DeriveSeed(seed, 0)
};

struct EnvOptions {
  bool render_observations = true;
  SeedMode seeding = SeedMode::kAdvance;
  // Order in which player actions are applied each step. Empty means a fresh
  // seeded shuffle every step; otherwise a permutation of player indices.
  std::vector<int> player_order;
};

struct StepResult {
  std::vector<std::vector<Tensor>> observations;  // [player][observation]
  std::vector<double> rewards;
  std::vector<EngineEvent> events;
  bool terminated = false;
  std::string termination_reason;
  std::int64_t step = 0;  // steps taken in this episode, including this one
};

// What environment logic sees while an episode runs.
class EpisodeContext {
 public:
  World& world() { return *world_; }
  const World& world() const { return *world_; }
  int num_players() const { return num_players_; }
  std::int64_t step() const { return step_; }
  std::uint64_t seed() const { return seed_; }
  const PropertyTree& properties() const { return *properties_; }

  // Rewards accumulate within a step and are reported with its result.
  void AddReward(int player, double reward);

  // Ends the episode. Only the first reason is kept.
  void Terminate(std::string reason);
  bool terminated() const { return terminated_; }
  const std::string& termination_reason() const { return reason_; }

 private:
  friend class Env;

  World* world_ = nullptr;
  const PropertyTree* properties_ = nullptr;
  std::vector<double> rewards_;
  int num_players_ = 0;
  std::int64_t step_ = 0;
  std::uint64_t seed_ = 0;
  bool terminated_ = false;
  std::string reason_;
};

// Host-level definition of an environment's content and rules. One instance
// belongs to one Env and may keep per-episode state.
class EnvironmentDefinition {
 public:
  virtual ~EnvironmentDefinition() = default;

  virtual std::string name() const = 0;
  virtual bool SupportsPlayerCount(int num_players) const = 0;
  virtual ActionSpec action_spec() const = 0;
  virtual ObservationSpec observation_spec(const EnvOptions& options) const = 0;
  virtual void DeclareProperties(PropertyTree& properties) const = 0;

  // Creates and populates the world for a new episode. Callbacks must be
  // registered here; the Env starts the world afterwards.
  virtual World BuildEpisode(EpisodeContext& ctx, std::uint64_t seed) = 0;

  virtual void ApplyAction(EpisodeContext& ctx, int player, int action) = 0;
  virtual const UpdateOrder& update_order() const = 0;

  // Runs after the tick; the place for timer-style termination.
  virtual void EndStep(EpisodeContext&) {}

  // Fills `out` in observation_spec order. Tensors arrive pre-shaped.
  virtual void Observe(EpisodeContext& ctx, int player, std::span<Tensor> out,
                       const EnvOptions& options) = 0;

  // Privileged whole-world view for observers.
  virtual void RenderGlobal(const World& world, Frame& out) const = 0;

  // Privileged per-player facts (position, inventory, ...) for observers.
  virtual EventPayload PlayerSummary(const EpisodeContext&, int) const { return {}; }
};

// Researcher-facing multi-player environment: reset, step, specs, properties.
// Single-owner like World.
class Env {
 public:
  // Throws ConfigError when the definition does not support num_players or
  // the player order is not a permutation.
  Env(std::unique_ptr<EnvironmentDefinition> definition, int num_players,
      std::uint64_t seed, EnvOptions options = {});

  Env(Env&&) noexcept = default;
  Env& operator=(Env&&) noexcept = default;

  std::string name() const { return definition_->name(); }
  int num_players() const { return num_players_; }
  std::uint64_t seed() const { return seed_; }
  const EnvOptions& options() const { return options_; }
  const ActionSpec& action_spec() const { return action_spec_; }
  const ObservationSpec& observation_spec() const { return observation_spec_; }
  const EnvironmentDefinition& definition() const { return *definition_; }

  // Starts the next episode (seeded per SeedMode) and returns the first
  // observations.
  const std::vector<std::vector<Tensor>>& Reset();
  const std::vector<std::vector<Tensor>>& ResetWithSeed(std::uint64_t episode_seed);

  // One action per player. Throws ConfigError for a wrong count or an
  // out-of-range action and StateError before Reset or after termination.
  const StepResult& Step(std::span<const int> actions);

  const std::string& ReadProperty(std::string_view path) const;
  void WriteProperty(std::string_view path, std::string value);
  const PropertyTree& properties() const { return *properties_; }

  bool has_episode() const { return world_ != nullptr; }
  bool running() const { return world_ != nullptr && !context_->terminated(); }
  const World& world() const;
  const EpisodeContext& context() const { return *context_; }
  std::int64_t episode_index() const { return episode_index_; }
  std::uint64_t episode_seed() const { return episode_seed_; }
  std::int64_t episode_step() const { return context_->step(); }
  const StepResult& last_result() const { return result_; }

  void RenderGlobal(Frame& out) const;
  EventPayload PlayerSummary(int player) const;

  // Digest of the action and observation specs.
  std::uint64_t SpecHash() const;

 private:
  void Observe();

  std::unique_ptr<EnvironmentDefinition> definition_;
  int num_players_;
  std::uint64_t seed_;
  EnvOptions options_;
  ActionSpec action_spec_;
  ObservationSpec observation_spec_;
  // Heap-held so the context's pointers survive moves of the Env.
  std::unique_ptr<PropertyTree> properties_;
  std::unique_ptr<World> world_;
  std::unique_ptr<EpisodeContext> context_;
  std::int64_t episode_index_ = -1;
  std::uint64_t episode_seed_ = 0;
  std::vector<int> order_;
  StepResult result_;
};

// Registered environment definitions, by name ("rws").
std::vector<std::string> AvailableEnvironments();
// Throws ConfigError for an unknown name.
std::unique_ptr<EnvironmentDefinition> MakeDefinition(std::string_view name);
Env MakeEnv(std::string_view name, int num_players, std::uint64_t seed,
            EnvOptions options = {});

}  // namespace gridlab

#endif  // GRIDLAB_ENV_H_
