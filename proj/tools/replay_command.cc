#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <memory>

#include "commands.h"
#include "gridlab/episode_record.h"

namespace gridlab::cli {

Runner AddReplay(CLI::App& app) {
  auto* cmd = app.add_subcommand("replay", "Re-simulate an episode record and verify it");
  auto path = std::make_shared<std::string>();
  cmd->add_option("path", *path, "Episode record")->required();

  return [path] {
    std::ifstream in(*path);
    if (!in) {
      std::fprintf(stderr, "error: cannot read %s\n", path->c_str());
      return kUsage;
    }
    std::vector<EpisodeRecord> records;
    try {
      records = ReadEpisodeRecords(in);
    } catch (const RecordError& e) {
      std::fprintf(stderr, "error: corrupt record: %s\n", e.what());
      return kUsage;
    }
    if (records.empty()) {
      std::fprintf(stderr, "error: corrupt record: no episodes\n");
      return kUsage;
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
      ReplayReport report;
      try {
        report = Replay(records[i]);
      } catch (const Error& e) {
        std::fprintf(stderr, "error: episode %zu cannot be replayed: %s\n", i, e.what());
        return kUsage;
      }
      if (!report.ok) {
        std::printf("REPLAY DIVERGED episode %zu step %" PRId64 ": %s\n", i, report.step,
                    report.detail.c_str());
        return kFailure;
      }
      std::printf("episode %zu: %zu steps, world hash %016" PRIx64 " matches\n", i,
                  records[i].steps.size(), report.world_hash);
    }
    std::printf("REPLAY OK %zu episode(s)\n", records.size());
    return kOk;
  };
}

}  // namespace gridlab::cli
