#ifndef GRIDLAB_EPISODE_RECORD_H_
#define GRIDLAB_EPISODE_RECORD_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gridlab/env.h"
#include "gridlab/errors.h"

// Line-delimited JSON episode logs. One episode is a header line, one line
// per step and an end line:
//
//   {"type":"header","format":"gridlab-episode","version":1,"env":"rws",...}
//   {"type":"step","step":1,"actions":[1,7],"rewards":[0.0,0.0],"events":[],...}
//   {"type":"end","steps":412,"reason":"interaction","world_hash":"9f0c..."}
//
// A file may hold any number of episodes back to back.
namespace gridlab {

inline constexpr int kRecordVersion = 1;

// Malformed or truncated record text.
class RecordError : public Error {
 public:
  using Error::Error;
};

struct EpisodeHeader {
  std::string env;
  int num_players = 0;
  std::uint64_t root_seed = 0;
  std::int64_t episode_index = 0;
  std::uint64_t episode_seed = 0;
  std::uint64_t spec_hash = 0;
  bool render_observations = false;
  std::map<std::string, std::string> properties;  // writes applied before reset
  std::vector<std::string> bots;                  // informational
};

struct StepRecord {
  std::int64_t step = 0;
  std::vector<int> actions;
  std::vector<double> rewards;
  std::vector<EngineEvent> events;
  bool terminated = false;
  std::string reason;
};

struct EpisodeRecord {
  EpisodeHeader header;
  std::vector<StepRecord> steps;
  bool complete = false;  // end line seen
  std::int64_t final_step = 0;
  std::string termination_reason;
  std::uint64_t world_hash = 0;
};

// Streams episodes to `out` as they are played.
class EpisodeRecorder {
 public:
  explicit EpisodeRecorder(std::ostream& out) : out_(out) {}

  // Call right after env.Reset().
  void Begin(const Env& env, std::uint64_t root_seed, std::vector<std::string> bots = {},
             std::map<std::string, std::string> properties = {});
  void Step(std::span<const int> actions, const StepResult& result);
  void End(const Env& env);

 private:
  std::ostream& out_;
};

// Throws RecordError on malformed input.
std::vector<EpisodeRecord> ReadEpisodeRecords(std::istream& in);

// Canonical single-line JSON of an event, as written to records.
std::string EventToJson(const EngineEvent& event);

struct ReplayReport {
  bool ok = true;
  std::int64_t step = 0;  // first divergent step when !ok (0 = header/setup)
  std::string detail;
  std::uint64_t world_hash = 0;  // of the replayed episode's final world
};

// Re-simulates one episode in a fresh env from the recorded seed and actions
// and compares rewards (bit-exact), events and termination step by step.
ReplayReport Replay(const EpisodeRecord& record);

}  // namespace gridlab

#endif  // GRIDLAB_EPISODE_RECORD_H_
