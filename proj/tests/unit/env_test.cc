#include "gridlab/env.h"

#include <algorithm>

#include <gtest/gtest.h>

#include "gridlab/errors.h"
#include "gridlab/hash.h"
#include "gridlab/rws.h"

namespace gridlab {
namespace {

using rws::RunningWithScissors;

std::vector<int> Noops(int n) { return std::vector<int>(n, 0); }

std::uint64_t ObservationHash(const std::vector<std::vector<Tensor>>& obs) {
  Fnv1a h;
  for (const auto& player : obs) {
    for (const Tensor& t : player) {
      h.Bytes(t.bytes);
      for (double v : t.values) h.F64(v);
    }
  }
  return h.value();
}

TEST(EnvTest, RwsSpecs) {
  Env env = MakeEnv("rws", 2, 42);
  EXPECT_EQ(env.name(), "rws");
  EXPECT_EQ(env.action_spec().size(), 8);
  EXPECT_EQ(env.action_spec().names[0], "noop");
  ASSERT_EQ(env.observation_spec().size(), 2u);
  EXPECT_EQ(env.observation_spec()[0], (TensorSpec{"RGB", DType::kUint8, {80, 80, 3}}));
  EXPECT_EQ(env.observation_spec()[1], (TensorSpec{"INVENTORY", DType::kFloat64, {3}}));

  EnvOptions headless;
  headless.render_observations = false;
  Env quiet = MakeEnv("rws", 2, 42, headless);
  ASSERT_EQ(quiet.observation_spec().size(), 1u);
  EXPECT_EQ(quiet.action_spec(), env.action_spec());
  EXPECT_NE(quiet.SpecHash(), env.SpecHash());
}

TEST(EnvTest, ConstructionErrors) {
  EXPECT_THROW(MakeEnv("rws", 1, 0), ConfigError);
  EXPECT_THROW(MakeEnv("rws", 3, 0), ConfigError);
  EXPECT_THROW(MakeEnv("chess", 2, 0), ConfigError);
  EnvOptions bad;
  bad.player_order = {0, 0};
  EXPECT_THROW(MakeEnv("rws", 2, 0, bad), ConfigError);
  bad.player_order = {1};
  EXPECT_THROW(MakeEnv("rws", 2, 0, bad), ConfigError);
  EXPECT_NE(std::find(AvailableEnvironments().begin(), AvailableEnvironments().end(), "rws"),
            AvailableEnvironments().end());
}

TEST(EnvTest, ObservationsAreExactly80By80Rgb) {
  Env env = MakeEnv("rws", 2, 1);
  const auto& obs = env.Reset();
  ASSERT_EQ(obs.size(), 2u);
  for (const auto& player : obs) {
    ASSERT_EQ(player.size(), 2u);
    EXPECT_EQ(player[0].shape, (std::vector<int>{80, 80, 3}));
    EXPECT_EQ(player[0].bytes.size(), 80u * 80u * 3u);
    EXPECT_TRUE(player[0].Matches(env.observation_spec()[0]));
    EXPECT_EQ(player[1].values, (std::vector<double>{0, 0, 0}));
  }
}

TEST(EnvTest, SameSeedSameFirstObservation) {
  Env a = MakeEnv("rws", 2, 77);
  Env b = MakeEnv("rws", 2, 77);
  EXPECT_EQ(ObservationHash(a.Reset()), ObservationHash(b.Reset()));
  EXPECT_EQ(a.world().Hash(), b.world().Hash());
}

TEST(EnvTest, SeedModes) {
  EnvOptions fixed;
  fixed.seeding = SeedMode::kFixed;
  Env f = MakeEnv("rws", 2, 5, fixed);
  f.Reset();
  const auto first = f.world().Hash();
  const auto seed = f.episode_seed();
  f.Reset();
  EXPECT_EQ(f.world().Hash(), first);
  EXPECT_EQ(f.episode_seed(), seed);
  EXPECT_EQ(seed, DeriveSeed(5, 0));

  Env a = MakeEnv("rws", 2, 5);
  a.Reset();
  const auto s1 = a.episode_seed();
  a.Reset();
  EXPECT_NE(a.episode_seed(), s1);
  EXPECT_EQ(a.episode_index(), 1);
}

TEST(EnvTest, StepErrors) {
  Env env = MakeEnv("rws", 2, 3);
  EXPECT_THROW(env.Step(Noops(2)), StateError);
  env.Reset();
  EXPECT_THROW(env.Step(Noops(1)), ConfigError);
  EXPECT_THROW(env.Step(std::vector<int>{0, 8}), ConfigError);
  EXPECT_THROW(env.Step(std::vector<int>{-1, 0}), ConfigError);
  // A rejected step leaves the episode where it was.
  EXPECT_EQ(env.episode_step(), 0);
}

TEST(EnvTest, NoopStepsEarnNothingAndTimeOut) {
  Env env = MakeEnv("rws", 2, 11);
  env.Reset();
  for (int s = 1; s <= 1000; ++s) {
    const StepResult& r = env.Step(Noops(2));
    ASSERT_EQ(r.step, s);
    EXPECT_EQ(r.rewards, (std::vector<double>{0, 0}));
    ASSERT_EQ(r.terminated, s == 1000) << s;
    if (r.terminated) EXPECT_EQ(r.termination_reason, "timer");
  }
  EXPECT_FALSE(env.running());
  EXPECT_THROW(env.Step(Noops(2)), StateError);
  env.Reset();
  EXPECT_TRUE(env.running());
}

TEST(EnvTest, PropertyWritesApplyFromNextEpisode) {
  Env env = MakeEnv("rws", 2, 11);
  EXPECT_EQ(env.ReadProperty("world/width"), "24");
  EXPECT_EQ(env.ReadProperty("rws/timer"), "1000");
  EXPECT_THROW(env.WriteProperty("world/width", "32"), PermissionError);
  EXPECT_THROW(env.ReadProperty("world/colour"), NotFound);
  EXPECT_THROW(env.WriteProperty("world/colour", "red"), NotFound);
  env.WriteProperty("rws/timer", "500");
  env.Reset();
  int steps = 0;
  while (env.running()) {
    env.Step(Noops(2));
    ++steps;
  }
  EXPECT_EQ(steps, 500);
}

TEST(EnvTest, EpisodesAreDeterministic) {
  Env a = MakeEnv("rws", 2, 123);
  Env b = MakeEnv("rws", 2, 123);
  Rng actions(9);
  for (int episode = 0; episode < 3; ++episode) {
    a.Reset();
    b.Reset();
    while (a.running()) {
      const std::vector<int> act = {static_cast<int>(actions.Below(8)),
                                    static_cast<int>(actions.Below(8))};
      const StepResult& ra = a.Step(act);
      const StepResult& rb = b.Step(act);
      ASSERT_EQ(ra.rewards, rb.rewards);
      ASSERT_EQ(ra.events, rb.events);
      ASSERT_EQ(ra.terminated, rb.terminated);
      ASSERT_EQ(ObservationHash(ra.observations), ObservationHash(rb.observations));
    }
    EXPECT_EQ(a.world().Hash(), b.world().Hash());
  }
}

struct Probe {
  Env env;
  const RunningWithScissors* rws;
};

Probe MakeProbe(std::vector<int> order) {
  auto def = std::make_unique<RunningWithScissors>();
  const RunningWithScissors* raw = def.get();
  EnvOptions options;
  options.render_observations = false;
  options.player_order = std::move(order);
  return {Env(std::move(def), 2, 0, options), raw};
}

// Seed whose episode puts player 0 on the given spawn.
std::uint64_t SeedWithSpawn(Probe& probe, int spawn) {
  for (std::uint64_t s = 0;; ++s) {
    probe.env.ResetWithSeed(s);
    const Vec2 at = probe.env.world().piece(probe.rws->avatar(0)).position->cell();
    if (at == probe.rws->spawn_cells()[spawn]) return s;
  }
}

// Exchanging the players' labels, actions and turn order exchanges their
// outcomes.
TEST(EnvTest, PlayersAreInterchangeable) {
  Probe a = MakeProbe({0, 1});
  Probe b = MakeProbe({1, 0});
  const std::uint64_t sa = SeedWithSpawn(a, 0);
  const std::uint64_t sb = SeedWithSpawn(b, 1);
  Rng rng(31);
  int interactions = 0;
  for (int episode = 0; episode < 40; ++episode) {
    a.env.ResetWithSeed(sa);
    b.env.ResetWithSeed(sb);
    while (a.env.running()) {
      const int x = static_cast<int>(rng.Below(8));
      const int y = static_cast<int>(rng.Below(8));
      const StepResult& ra = a.env.Step(std::vector<int>{x, y});
      const StepResult& rb = b.env.Step(std::vector<int>{y, x});
      ASSERT_EQ(ra.rewards[0], rb.rewards[1]);
      ASSERT_EQ(ra.rewards[1], rb.rewards[0]);
      ASSERT_EQ(ra.observations[0][0].values, rb.observations[1][0].values);
      ASSERT_EQ(ra.terminated, rb.terminated);
      ASSERT_EQ(ra.termination_reason, rb.termination_reason);
      if (ra.termination_reason == "interaction") ++interactions;
    }
  }
  EXPECT_GT(interactions, 0);
}

}  // namespace
}  // namespace gridlab
