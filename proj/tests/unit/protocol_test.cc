#include <algorithm>
#include <filesystem>

#include <gtest/gtest.h>

#include "transcript.h"

namespace gridlab::testing {
namespace {

std::vector<std::filesystem::path> Fixtures() {
  std::vector<std::filesystem::path> out;
  for (const auto& e :
       std::filesystem::directory_iterator(std::string(GRIDLAB_FIXTURE_DIR) + "/protocol")) {
    if (e.path().extension() == ".jsonl") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ProtocolTest, FixturesExist) { EXPECT_GE(Fixtures().size(), 3u); }

// Feeding a fixture's inputs to a fresh session reproduces its outputs.
TEST(ProtocolTest, TranscriptsReplayExactly) {
  for (const auto& path : Fixtures()) {
    const auto full = ReadTranscript(path.string());
    std::vector<nlohmann::json> script;
    for (const auto& line : full) {
      if (!IsOutput(line)) script.push_back(line);
    }
    const auto replayed = PlayTranscript(script);
    ASSERT_EQ(replayed.size(), full.size()) << path;
    for (std::size_t i = 0; i < full.size(); ++i) {
      ASSERT_EQ(replayed[i], full[i]) << path.filename() << " line " << i + 1;
    }
  }
}

}  // namespace
}  // namespace gridlab::testing
