#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "commands.h"
#include "gridlab/errors.h"
#include "gridlab/runner.h"

namespace gridlab::cli {

namespace {

struct RunFlags {
  RunConfig config;
  std::string bots = "random,random";
  std::vector<std::string> sets;
  std::string record_path;
};

}  // namespace

Runner AddRun(CLI::App& app) {
  auto* cmd = app.add_subcommand("run", "Play episodes with scripted bots");
  auto f = std::make_shared<RunFlags>();
  f->config.episodes = 10;
  cmd->add_option("--env", f->config.env, "Environment name")->capture_default_str();
  cmd->add_option("--bots", f->bots,
                  "Comma-separated policy per player: random, noop, collect-rock, "
                  "collect-paper, collect-scissors, hunter")
      ->capture_default_str();
  cmd->add_option("--episodes", f->config.episodes, "Episodes")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--seed", f->config.seed, "Root seed")->capture_default_str();
  cmd->add_option("--set", f->sets, "Property override path=value, applied before reset");
  cmd->add_option("--record", f->record_path, "Write an episode record (JSON lines)");
  cmd->add_flag("--render", f->config.render, "Render egocentric observations while playing");

  return [f] {
    RunConfig& c = f->config;
    c.bots.clear();
    for (std::size_t start = 0; start <= f->bots.size();) {
      std::size_t end = f->bots.find(',', start);
      if (end == std::string::npos) end = f->bots.size();
      c.bots.push_back(f->bots.substr(start, end - start));
      start = end + 1;
    }
    for (const auto& s : f->sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects path=value");
      c.properties[s.substr(0, eq)] = s.substr(eq + 1);
    }
    std::ofstream record;
    if (!f->record_path.empty()) {
      record.open(f->record_path);
      if (!record) throw Error("cannot write " + f->record_path);
      c.record = &record;
    }
    const RunSummary summary = RunEpisodes(c);

    std::printf("env %s  episodes %zu  seed %llu\n", c.env.c_str(), summary.episodes.size(),
                static_cast<unsigned long long>(c.seed));
    std::printf("%-7s %-18s %12s %22s\n", "player", "bot", "mean_return", "mean_interaction_reward");
    for (int p = 0; p < static_cast<int>(c.bots.size()); ++p) {
      std::printf("%-7d %-18s %12.6f %22.6f\n", p + 1, c.bots[p].c_str(), summary.MeanReturn(p),
                  summary.MeanInteractionReward(p));
    }
    std::printf("terminations");
    for (const auto& [reason, n] : summary.terminations) {
      std::printf("  %s %lld", reason.c_str(), static_cast<long long>(n));
    }
    std::printf("\n");
    double steps = 0;
    for (const auto& e : summary.episodes) steps += static_cast<double>(e.steps);
    if (!summary.episodes.empty()) {
      std::printf("mean episode length %.2f\n", steps / static_cast<double>(summary.episodes.size()));
    }
    if (!f->record_path.empty()) std::printf("recorded to %s\n", f->record_path.c_str());
    return kOk;
  };
}

}  // namespace gridlab::cli
