#include "gridlab/bots.h"

#include <gtest/gtest.h>

#include "gridlab/errors.h"
#include "gridlab/runner.h"
#include "gridlab/rws.h"

namespace gridlab {
namespace {

TEST(BotsTest, Registry) {
  const auto names = AvailablePolicies();
  for (const char* n : {"random", "noop", "hunter", "collect-rock", "collect-paper",
                        "collect-scissors"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
    EXPECT_EQ(MakePolicy(n)->name(), n);
  }
  EXPECT_THROW(MakePolicy("collect-gold"), ConfigError);
  EXPECT_THROW(MakePolicy(""), ConfigError);
}

TEST(BotsTest, NoopAndRandom) {
  Env env = MakeEnv("rws", 2, 1);
  env.Reset();
  auto noop = MakePolicy("noop");
  auto r1 = MakePolicy("random", 7);
  auto r2 = MakePolicy("random", 7);
  std::vector<int> seen(8);
  for (int i = 0; i < 400; ++i) {
    EXPECT_EQ(noop->Act(env, 0), 0);
    const int a = r1->Act(env, 0);
    ASSERT_GE(a, 0);
    ASSERT_LT(a, 8);
    EXPECT_EQ(a, r2->Act(env, 0));
    ++seen[a];
  }
  for (int n : seen) EXPECT_GT(n, 0);
}

TEST(BotsTest, CollectorGathersItsResourceFirst) {
  for (int r = 0; r < 3; ++r) {
    auto def = std::make_unique<rws::RunningWithScissors>();
    const rws::RunningWithScissors* game = def.get();
    EnvOptions options;
    options.render_observations = false;
    Env env(std::move(def), 2, 3, options);
    env.Reset();
    auto bot = MakePolicy("collect-" + std::string(rws::kResourceNames[r]), 1);
    bot->BeginEpisode(env, 0);
    std::vector<int> actions(2, 0);
    while (env.running() && game->counts(0).total() < 3) {
      actions[0] = bot->Act(env, 0);
      env.Step(actions);
    }
    EXPECT_EQ(game->counts(0).n[r], 3) << rws::kResourceNames[r];
    EXPECT_EQ(game->counts(0).total(), 3);
  }
}

TEST(BotsTest, HunterFindsAStationaryOpponent) {
  RunConfig config;
  config.bots = {"hunter", "noop"};
  config.episodes = 20;
  config.seed = 4;
  const RunSummary s = RunEpisodes(config);
  EXPECT_EQ(s.terminations.count("interaction") ? s.terminations.at("interaction") : 0, 20);
}

TEST(BotsTest, NoopsOnlyEndByTimer) {
  RunConfig config;
  config.bots = {"noop", "noop"};
  config.episodes = 3;
  config.properties = {{"rws/timer", "50"}};
  const RunSummary s = RunEpisodes(config);
  for (const auto& e : s.episodes) {
    EXPECT_EQ(e.steps, 50);
    EXPECT_EQ(e.reason, "timer");
    EXPECT_EQ(e.returns, (std::vector<double>{0, 0}));
  }
}

}  // namespace
}  // namespace gridlab
