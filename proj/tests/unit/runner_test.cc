#include "gridlab/runner.h"

#include <gtest/gtest.h>

#include "gridlab/errors.h"

namespace gridlab {
namespace {

BenchConfig Small(int workers, bool render) {
  BenchConfig c;
  c.episodes = 12;
  c.steps_per_episode = 150;
  c.workers = workers;
  c.render = render;
  c.seed = 9;
  return c;
}

TEST(RunnerTest, BenchCountsEverything) {
  const BenchReport r = RunBenchmark(Small(1, false));
  EXPECT_EQ(r.total_steps, 12 * 150);
  EXPECT_GE(r.resets, 12);
  EXPECT_GT(r.steps_per_second, 0);
  EXPECT_DOUBLE_EQ(r.frames_per_second, 2 * r.steps_per_second);
}

TEST(RunnerTest, ChecksumIgnoresWorkerCount) {
  const auto one = RunBenchmark(Small(1, false));
  const auto three = RunBenchmark(Small(3, false));
  EXPECT_EQ(one.checksum, three.checksum);
  EXPECT_EQ(one.resets, three.resets);
  EXPECT_EQ(one.checksum, RunBenchmark(Small(1, true)).checksum);
  BenchConfig other = Small(1, false);
  other.seed = 10;
  EXPECT_NE(RunBenchmark(other).checksum, one.checksum);
}

TEST(RunnerTest, BadBenchSettings) {
  BenchConfig c = Small(1, false);
  c.episodes = 0;
  EXPECT_THROW(RunBenchmark(c), ConfigError);
  c = Small(0, false);
  EXPECT_THROW(RunBenchmark(c), ConfigError);
  c = Small(1, false);
  c.env = "nope";
  EXPECT_THROW(RunBenchmark(c), ConfigError);
}

TEST(RunnerTest, RunEpisodesSummary) {
  RunConfig c;
  c.bots = {"collect-paper", "collect-rock"};
  c.episodes = 10;
  c.seed = 2;
  const RunSummary s = RunEpisodes(c);
  ASSERT_EQ(s.episodes.size(), 10u);
  std::int64_t total = 0;
  for (const auto& [reason, n] : s.terminations) total += n;
  EXPECT_EQ(total, 10);
  for (const auto& e : s.episodes) {
    EXPECT_EQ(e.returns[0] + e.returns[1], 0.0);
  }
  EXPECT_DOUBLE_EQ(s.MeanInteractionReward(0), -s.MeanInteractionReward(1));
  c.bots = {"noop"};
  EXPECT_THROW(RunEpisodes(c), ConfigError);
}

TEST(RunnerTest, PolicySeedsDiffer) {
  EXPECT_NE(PolicySeed(1, 0), PolicySeed(1, 1));
  EXPECT_EQ(PolicySeed(1, 0), PolicySeed(1, 0));
}

}  // namespace
}  // namespace gridlab
