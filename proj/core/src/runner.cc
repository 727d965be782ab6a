#include "gridlab/runner.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <memory>
#include <optional>
#include <thread>

#include "gridlab/bots.h"
#include "gridlab/env.h"
#include "gridlab/episode_record.h"
#include "gridlab/errors.h"
#include "gridlab/hash.h"
#include "gridlab/rng.h"

namespace gridlab {

namespace {

struct EpisodeDigest {
  std::uint64_t digest = 0;
  std::int64_t resets = 0;
};

// One bench episode; seeds depend only on (root seed, episode), so results do
// not depend on how episodes are split across workers.
EpisodeDigest BenchEpisode(Env& env, std::uint64_t root, std::int64_t episode, std::int64_t steps) {
  const std::uint64_t episode_root = DeriveSeed(root, static_cast<std::uint64_t>(episode));
  Rng agent(DeriveSeed(episode_root, 0));
  const auto num_actions = static_cast<std::uint64_t>(env.action_spec().size());
  std::vector<int> actions(env.num_players());
  Fnv1a h;
  EpisodeDigest out;
  std::uint64_t segment = 1;
  env.ResetWithSeed(DeriveSeed(episode_root, segment));
  ++out.resets;
  for (std::int64_t s = 0; s < steps; ++s) {
    if (!env.running()) {
      h.U64(env.world().Hash());
      env.ResetWithSeed(DeriveSeed(episode_root, ++segment));
      ++out.resets;
    }
    for (int& a : actions) a = static_cast<int>(agent.Below(num_actions));
    const StepResult& r = env.Step(actions);
    for (double x : r.rewards) h.U64(std::bit_cast<std::uint64_t>(x));
  }
  h.U64(env.world().Hash());
  out.digest = h.value();
  return out;
}

}  // namespace

BenchReport RunBenchmark(const BenchConfig& config) {
  if (config.episodes < 1) throw ConfigError("episodes must be positive");
  if (config.steps_per_episode < 1) throw ConfigError("steps per episode must be positive");
  if (config.workers < 1) throw ConfigError("workers must be positive");
  EnvOptions options;
  options.render_observations = config.render;
  // Construct up front so configuration errors surface before timing.
  std::vector<Env> envs;
  const int workers = static_cast<int>(std::min<std::int64_t>(config.workers, config.episodes));
  for (int w = 0; w < workers; ++w) {
    envs.push_back(MakeEnv(config.env, config.num_players, config.seed, options));
  }

  std::vector<EpisodeDigest> digests(static_cast<std::size_t>(config.episodes));
  const auto start = std::chrono::steady_clock::now();
  auto work = [&](int w) {
    for (std::int64_t e = w; e < config.episodes; e += workers) {
      digests[static_cast<std::size_t>(e)] =
          BenchEpisode(envs[w], config.seed, e, config.steps_per_episode);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  const auto stop = std::chrono::steady_clock::now();

  BenchReport report;
  report.config = config;
  report.config.workers = workers;
  report.total_steps = config.episodes * config.steps_per_episode;
  report.wall_seconds = std::chrono::duration<double>(stop - start).count();
  Fnv1a h;
  for (const auto& d : digests) {
    h.U64(d.digest);
    report.resets += d.resets;
  }
  report.checksum = h.value();
  const double secs = std::max(report.wall_seconds, 1e-9);
  report.steps_per_second = static_cast<double>(report.total_steps) / secs;
  report.frames_per_second = report.steps_per_second * config.num_players;
  return report;
}

double RunSummary::MeanReturn(int player) const {
  if (episodes.empty()) return 0;
  double sum = 0;
  for (const auto& e : episodes) sum += e.returns[player];
  return sum / static_cast<double>(episodes.size());
}

double RunSummary::MeanInteractionReward(int player) const {
  double sum = 0;
  std::int64_t n = 0;
  for (const auto& e : episodes) {
    if (e.reason != "interaction") continue;
    sum += e.returns[player];
    ++n;
  }
  return n == 0 ? 0 : sum / static_cast<double>(n);
}

std::uint64_t PolicySeed(std::uint64_t seed, int player) {
  return DeriveSeed(DeriveSeed(seed, 0x706f6c6963790000ULL), static_cast<std::uint64_t>(player));
}

RunSummary RunEpisodes(const RunConfig& config) {
  if (config.episodes < 0) throw ConfigError("episodes must be non-negative");
  const int players = static_cast<int>(config.bots.size());
  EnvOptions options;
  options.render_observations = config.render;
  Env env = MakeEnv(config.env, players, config.seed, options);
  for (const auto& [path, value] : config.properties) env.WriteProperty(path, value);

  std::vector<std::unique_ptr<Policy>> policies;
  for (int p = 0; p < players; ++p) {
    policies.push_back(MakePolicy(config.bots[p], PolicySeed(config.seed, p)));
  }
  std::optional<EpisodeRecorder> recorder;
  if (config.record != nullptr) recorder.emplace(*config.record);

  RunSummary summary;
  std::vector<int> actions(players);
  for (std::int64_t e = 0; e < config.episodes; ++e) {
    env.Reset();
    for (int p = 0; p < players; ++p) policies[p]->BeginEpisode(env, p);
    if (recorder) recorder->Begin(env, config.seed, config.bots, config.properties);
    EpisodeOutcome outcome;
    outcome.returns.assign(players, 0.0);
    while (env.running()) {
      for (int p = 0; p < players; ++p) actions[p] = policies[p]->Act(env, p);
      const StepResult& r = env.Step(actions);
      for (int p = 0; p < players; ++p) outcome.returns[p] += r.rewards[p];
      if (recorder) recorder->Step(actions, r);
    }
    if (recorder) recorder->End(env);
    outcome.steps = env.episode_step();
    outcome.reason = env.context().termination_reason();
    ++summary.terminations[outcome.reason];
    summary.episodes.push_back(std::move(outcome));
  }
  return summary;
}

}  // namespace gridlab
