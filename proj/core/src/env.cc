#include "gridlab/env.h"

#include <algorithm>
#include <numeric>

#include "gridlab/errors.h"
#include "gridlab/hash.h"
#include "gridlab/rng.h"

namespace gridlab {

std::string_view ToString(DType t) {
  switch (t) {
    case DType::kUint8: return "uint8";
    case DType::kFloat64: return "float64";
  }
  return "?";
}

std::size_t TensorSpec::num_elements() const {
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  return n;
}

bool Tensor::Matches(const TensorSpec& spec) const {
  if (dtype != spec.dtype || shape != spec.shape) return false;
  const std::size_t n = spec.num_elements();
  return dtype == DType::kUint8 ? bytes.size() == n && values.empty()
                                : values.size() == n && bytes.empty();
}

void EpisodeContext::AddReward(int player, double reward) {
  if (player < 0 || player >= num_players_) {
    throw ConfigError("reward for unknown player " + std::to_string(player));
  }
  rewards_[player] += reward;
}

void EpisodeContext::Terminate(std::string reason) {
  if (terminated_) return;
  terminated_ = true;
  reason_ = std::move(reason);
}

Env::Env(std::unique_ptr<EnvironmentDefinition> definition, int num_players,
         std::uint64_t seed, EnvOptions options)
    : definition_(std::move(definition)),
      num_players_(num_players),
      seed_(seed),
      options_(std::move(options)),
      properties_(std::make_unique<PropertyTree>()),
      context_(std::make_unique<EpisodeContext>()) {
  if (!definition_) throw ConfigError("null environment definition");
  if (num_players < 1 || !definition_->SupportsPlayerCount(num_players)) {
    throw ConfigError("environment '" + definition_->name() + "' does not support " +
                      std::to_string(num_players) + " players");
  }
  if (!options_.player_order.empty()) {
    std::vector<int> sorted = options_.player_order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(num_players);
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) throw ConfigError("player order must be a permutation");
  }
  action_spec_ = definition_->action_spec();
  observation_spec_ = definition_->observation_spec(options_);
  properties_->Declare("env/name", definition_->name(), false);
  properties_->Declare("env/num_players", std::to_string(num_players), false);
  definition_->DeclareProperties(*properties_);

  result_.observations.resize(num_players);
  for (auto& per_player : result_.observations) {
    for (const TensorSpec& spec : observation_spec_) {
      Tensor t;
      t.dtype = spec.dtype;
      t.shape = spec.shape;
      if (spec.dtype == DType::kUint8) {
        t.bytes.resize(spec.num_elements());
      } else {
        t.values.resize(spec.num_elements());
      }
      per_player.push_back(std::move(t));
    }
  }
  result_.rewards.assign(num_players, 0.0);
  order_.resize(num_players);
}

const std::vector<std::vector<Tensor>>& Env::Reset() {
  const std::uint64_t index =
      options_.seeding == SeedMode::kFixed ? 0 : static_cast<std::uint64_t>(episode_index_ + 1);
  return ResetWithSeed(DeriveSeed(seed_, index));
}

const std::vector<std::vector<Tensor>>& Env::ResetWithSeed(std::uint64_t episode_seed) {
  ++episode_index_;
  episode_seed_ = episode_seed;
  // The previous world's callbacks may reference definition state that
  // BuildEpisode resets, so drop it first.
  world_.reset();
  *context_ = EpisodeContext{};
  context_->properties_ = properties_.get();
  context_->num_players_ = num_players_;
  context_->seed_ = episode_seed;
  context_->rewards_.assign(num_players_, 0.0);

  world_ = std::make_unique<World>(definition_->BuildEpisode(*context_, episode_seed));
  context_->world_ = world_.get();
  world_->Start();
  // Setup-time events are not part of any step.
  world_->DrainEvents();

  std::fill(result_.rewards.begin(), result_.rewards.end(), 0.0);
  result_.events.clear();
  result_.terminated = false;
  result_.termination_reason.clear();
  result_.step = 0;
  Observe();
  return result_.observations;
}

const StepResult& Env::Step(std::span<const int> actions) {
  if (!world_) throw StateError("step before reset");
  if (context_->terminated()) throw StateError("step after the episode terminated");
  if (static_cast<int>(actions.size()) != num_players_) {
    throw ConfigError("expected " + std::to_string(num_players_) + " actions, got " +
                      std::to_string(actions.size()));
  }
  for (int a : actions) {
    if (a < 0 || a >= action_spec_.size()) {
      throw ConfigError("action " + std::to_string(a) + " out of range [0, " +
                        std::to_string(action_spec_.size()) + ")");
    }
  }

  std::fill(context_->rewards_.begin(), context_->rewards_.end(), 0.0);
  ++context_->step_;

  if (options_.player_order.empty()) {
    std::iota(order_.begin(), order_.end(), 0);
    world_->rng().Shuffle(std::span<int>(order_));
  } else {
    order_ = options_.player_order;
  }
  for (int player : order_) {
    if (context_->terminated()) break;
    definition_->ApplyAction(*context_, player, actions[player]);
  }
  result_.events = Tick(*world_, definition_->update_order());
  definition_->EndStep(*context_);

  result_.rewards = context_->rewards_;
  result_.terminated = context_->terminated();
  result_.termination_reason = context_->termination_reason();
  result_.step = context_->step();
  Observe();
  return result_;
}

void Env::Observe() {
  if (observation_spec_.empty()) return;
  for (int p = 0; p < num_players_; ++p) {
    definition_->Observe(*context_, p, result_.observations[p], options_);
  }
}

const std::string& Env::ReadProperty(std::string_view path) const {
  return properties_->Read(path);
}

void Env::WriteProperty(std::string_view path, std::string value) {
  properties_->Write(path, std::move(value));
}

const World& Env::world() const {
  if (!world_) throw StateError("no episode has been started");
  return *world_;
}

void Env::RenderGlobal(Frame& out) const { definition_->RenderGlobal(world(), out); }

EventPayload Env::PlayerSummary(int player) const {
  if (player < 0 || player >= num_players_) {
    throw ConfigError("unknown player " + std::to_string(player));
  }
  world();
  return definition_->PlayerSummary(*context_, player);
}

std::uint64_t Env::SpecHash() const {
  Fnv1a h;
  h.Str(definition_->name()).I64(num_players_);
  for (const auto& a : action_spec_.names) h.Str(a);
  for (const auto& o : observation_spec_) {
    h.Str(o.name).Str(ToString(o.dtype));
    for (int d : o.shape) h.I64(d);
  }
  return h.value();
}

}  // namespace gridlab
