#ifndef GRIDLAB_RUNNER_H_
#define GRIDLAB_RUNNER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace gridlab {

// Throughput harness: uniform-random agents, fixed step budget per episode.
// An episode that terminates early is reset and keeps stepping until the
// budget is spent, so total steps are always episodes * steps_per_episode.
struct BenchConfig {
  std::string env = "rws";
  int num_players = 2;
  std::int64_t episodes = 1000;
  std::int64_t steps_per_episode = 1000;
  bool render = true;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct BenchReport {
  BenchConfig config;
  std::int64_t total_steps = 0;
  std::int64_t resets = 0;  // including the first reset of each episode
  double wall_seconds = 0;
  double steps_per_second = 0;
  double frames_per_second = 0;  // steps/sec * players
  std::uint64_t checksum = 0;    // over actions, rewards and final world hashes
};

// Throws ConfigError for bad settings or an unknown env.
BenchReport RunBenchmark(const BenchConfig& config);

// Scripted-bot episodes, optionally recorded.
struct RunConfig {
  std::string env = "rws";
  std::vector<std::string> bots;  // one policy per player
  std::int64_t episodes = 1;
  std::uint64_t seed = 0;
  bool render = false;
  std::map<std::string, std::string> properties;  // written before the first reset
  std::ostream* record = nullptr;                 // EpisodeRecord sink
};

struct EpisodeOutcome {
  std::int64_t steps = 0;
  std::string reason;
  std::vector<double> returns;  // per player
};

struct RunSummary {
  std::vector<EpisodeOutcome> episodes;
  std::map<std::string, std::int64_t> terminations;  // reason -> count

  double MeanReturn(int player) const;
  // Mean over episodes that ended by "interaction"; 0 when there were none.
  double MeanInteractionReward(int player) const;
};

RunSummary RunEpisodes(const RunConfig& config);

// Root seed for player `player`'s policy under run seed `seed`.
std::uint64_t PolicySeed(std::uint64_t seed, int player);

}  // namespace gridlab

#endif  // GRIDLAB_RUNNER_H_
