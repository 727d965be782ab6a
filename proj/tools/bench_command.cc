#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <memory>

#include <json.hpp>

#include "commands.h"
#include "gridlab/runner.h"

namespace gridlab::cli {

Runner AddBench(CLI::App& app) {
  auto* cmd = app.add_subcommand("bench", "Measure stepping throughput with random agents");
  auto cfg = std::make_shared<BenchConfig>();
  auto observation = std::make_shared<std::string>("rgb");
  auto json_out = std::make_shared<bool>(false);
  cmd->add_option("--env", cfg->env, "Environment name")->capture_default_str();
  cmd->add_option("--players", cfg->num_players, "Player count")->capture_default_str();
  cmd->add_option("--episodes", cfg->episodes, "Episodes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--steps", cfg->steps_per_episode, "Steps per episode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--observation", *observation, "rgb renders egocentric views; none skips them")
      ->check(CLI::IsMember({"rgb", "none"}))
      ->capture_default_str();
  cmd->add_option("--seed", cfg->seed, "Root seed")->capture_default_str();
  cmd->add_option("--workers", cfg->workers, "Worker threads, one env each")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--json", *json_out, "Print a JSON report");

  return [cfg, observation, json_out] {
    cfg->render = *observation == "rgb";
    const BenchReport r = RunBenchmark(*cfg);
    char checksum[17];
    std::snprintf(checksum, sizeof checksum, "%016" PRIx64, r.checksum);
    if (*json_out) {
      nlohmann::json j = {
          {"schema", 1},
          {"env", r.config.env},
          {"players", r.config.num_players},
          {"episodes", r.config.episodes},
          {"steps_per_episode", r.config.steps_per_episode},
          {"observation", *observation},
          {"seed", r.config.seed},
          {"workers", r.config.workers},
          {"total_steps", r.total_steps},
          {"resets", r.resets},
          {"wall_seconds", r.wall_seconds},
          {"steps_per_second", r.steps_per_second},
          {"frames_per_second", r.frames_per_second},
          {"checksum", checksum},
      };
      std::cout << j.dump(2) << "\n";
    } else {
      std::printf("env %s  players %d  episodes %" PRId64 "  steps/episode %" PRId64
                  "  observation %s  workers %d\n",
                  r.config.env.c_str(), r.config.num_players, r.config.episodes,
                  r.config.steps_per_episode, observation->c_str(), r.config.workers);
      std::printf("total steps   %" PRId64 "\n", r.total_steps);
      std::printf("resets        %" PRId64 "\n", r.resets);
      std::printf("wall time     %.3f s\n", r.wall_seconds);
      std::printf("steps/sec     %.0f\n", r.steps_per_second);
      std::printf("frames/sec    %.0f\n", r.frames_per_second);
      std::printf("checksum      %s\n", checksum);
    }
    return kOk;
  };
}

}  // namespace gridlab::cli
