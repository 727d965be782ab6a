// Regenerates the frozen fixtures under tests/fixtures. Only needed when a
// deliberate change alters hashes or the wire format; the tests never run it.
//
//   make_goldens hashes > tests/fixtures/golden_hashes.txt
//   make_goldens transcripts tests/fixtures/protocol

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridlab/render.h"
#include "gridlab/rws.h"
#include "oracles.h"
#include "scenes.h"
#include "transcript.h"

namespace {

using gridlab::testing::Hex64;
using nlohmann::json;

constexpr int kSequences = 1000;
constexpr int kOpsPerSequence = 120;

int Hashes() {
  std::cout << "# Frozen hashes; regenerate with make_goldens hashes.\n";
  for (int i = 0; i < kSequences; ++i) {
    const auto r = gridlab::testing::RunOpSequence(gridlab::testing::OpSequenceSeed(i),
                                                   kOpsPerSequence);
    if (!r.violations.empty()) {
      std::cerr << "sequence " << i << ": " << r.violations.front() << "\n";
      return 1;
    }
    char key[32];
    std::snprintf(key, sizeof key, "ops/%04d", i);
    std::cout << key << " " << Hex64(r.digest) << "\n";
  }
  const gridlab::SpriteSet sprites = gridlab::rws::DefaultSprites();
  const gridlab::WindowSpec window{3, 1, 2, 2};
  for (const auto& scene : gridlab::testing::GoldenScenes()) {
    const gridlab::Renderer renderer(scene.world, sprites);
    for (int v = 0; v < 2; ++v) {
      const auto frame = renderer.RenderWindow(scene.world, scene.avatars[v], window);
      std::cout << "window/" << scene.name << "/" << v << " "
                << Hex64(gridlab::testing::FrameHash(frame)) << "\n";
    }
    std::cout << "global/" << scene.name << " "
              << Hex64(gridlab::testing::FrameHash(renderer.RenderGlobal(scene.world))) << "\n";
  }
  return 0;
}

json Send(int client, json message) {
  return {{"event", "send"}, {"client", client}, {"message", std::move(message)}};
}
json Connect(int client) { return {{"event", "connect"}, {"client", client}}; }
json Tick() { return {{"event", "tick"}}; }

std::vector<std::pair<std::string, std::vector<json>>> Scripts() {
  std::vector<std::pair<std::string, std::vector<json>>> scripts;
  scripts.push_back(
      {"seat_session",
       {
           {{"event", "config"}, {"env", "rws"}, {"seats", "human,bot:noop"},
            {"tick", "fixed_rate"}, {"tick_ms", 200}, {"observers", true}, {"seed", 5},
            {"token", "t"}},
           Connect(1),
           Send(1, {{"type", "join"}, {"role", "seat"}, {"seat", 0}, {"token", "t"}}),
           Send(1, {{"type", "action"}, {"step", 0}, {"action", 1}}),
           Send(1, {{"type", "action"}, {"step", 0}, {"action", 5}}),
           Tick(),
           Send(1, {{"type", "action"}, {"step", 0}, {"action", 1}}),
           Send(1, {{"type", "action"}, {"step", 1}, {"action", 99}}),
           Tick(),
           Send(1, {{"type", "leave"}}),
           Connect(2),
           Send(2, {{"type", "join"}, {"role", "seat"}, {"token", "t"}}),
           {{"event", "disconnect"}, {"client", 2}},
       }});
  scripts.push_back(
      {"observer",
       {
           {{"event", "config"}, {"env", "rws"}, {"seats", "bot:noop,bot:noop"},
            {"tick", "fixed_rate"}, {"tick_ms", 100}, {"observers", true}, {"seed", 9},
            {"token", ""}},
           Connect(1),
           Send(1, {{"type", "join"}, {"role", "observer"}}),
           Tick(),
           Connect(2),
           Send(2, {{"type", "join"}, {"role", "seat"}, {"seat", 1}}),
       }});
  scripts.push_back(
      {"errors",
       {
           {{"event", "config"}, {"env", "rws"}, {"seats", "human,human"},
            {"tick", "lockstep"}, {"tick_ms", 500}, {"observers", true}, {"seed", 1},
            {"token", "t"}},
           Connect(1),
           Send(1, "this is not json"),
           Connect(2),
           Send(2, {{"type", "join"}, {"role", "seat"}, {"seat", 0}, {"token", "wrong"}}),
           Connect(3),
           Send(3, {{"type", "join"}, {"role", "seat"}, {"seat", 0}, {"token", "t"}}),
           Connect(4),
           Send(4, {{"type", "action"}, {"step", 0}, {"action", 0}}),
           Send(4, {{"type", "reset"}}),
           Send(4, {{"type", "join"}, {"role", "seat"}, {"seat", 0}, {"token", "t"}}),
           Send(4, {{"type", "join"}, {"role", "seat"}, {"seat", 7}, {"token", "t"}}),
           Send(3, {{"type", "action"}, {"step", 0}, {"action", 0}}),
           Send(4, {{"type", "join"}, {"role", "observer"}, {"token", "t"}}),
           Connect(5),
           Send(5, {{"type", "join"}, {"role", "seat"}, {"seat", 1}, {"token", "t"}}),
           Send(5, {{"type", "reset"}}),
           Send(5, {{"type", "join"}, {"role", "seat"}, {"seat", 1}, {"token", "t"}}),
           Send(5, {{"type", "dance"}}),
       }});
  return scripts;
}

int Transcripts(const std::string& dir) {
  for (const auto& [name, script] : Scripts()) {
    std::ofstream out(dir + "/" + name + ".jsonl");
    if (!out) {
      std::cerr << "cannot write " << dir << "/" << name << ".jsonl\n";
      return 1;
    }
    for (const json& line : gridlab::testing::PlayTranscript(script)) out << line.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "";
  if (mode == "hashes") return Hashes();
  if (mode == "transcripts" && argc > 2) return Transcripts(argv[2]);
  std::cerr << "usage: make_goldens hashes | transcripts <dir>\n";
  return 2;
}
