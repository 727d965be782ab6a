#include "transcript.h"

#include <fstream>
#include <memory>
#include <stdexcept>

#include "gridlab/session.h"

namespace gridlab::testing {

using nlohmann::json;

bool IsOutput(const json& line) {
  const std::string e = line.at("event");
  return e == "recv" || e == "close";
}

std::vector<json> PlayTranscript(const std::vector<json>& script) {
  if (script.empty() || script[0].at("event") != "config") {
    throw std::runtime_error("transcript must start with a config line");
  }
  const json& c = script[0];
  SessionConfig config;
  config.env = c.value("env", "rws");
  config.seats = ParseSeats(c.at("seats").get<std::string>());
  config.tick = c.value("tick", "fixed_rate") == "lockstep" ? TickPolicy::kLockstep
                                                              : TickPolicy::kFixedRate;
  config.tick_ms = c.value("tick_ms", 200);
  config.observers = c.value("observers", true);
  config.seed = c.value("seed", 0ULL);
  config.token = c.value("token", "");

  std::vector<json> out{c};
  Session session(
      config,
      [&](ClientId id, const std::string& msg) {
        out.push_back({{"event", "recv"}, {"client", id}, {"message", json::parse(msg)}});
      },
      [&](ClientId id) { out.push_back({{"event", "close"}, {"client", id}}); });

  for (std::size_t i = 1; i < script.size(); ++i) {
    const json& line = script[i];
    if (IsOutput(line)) continue;
    out.push_back(line);
    const std::string e = line.at("event");
    if (e == "connect") {
      session.OnConnect(line.at("client"));
    } else if (e == "send") {
      const json& m = line.at("message");
      session.OnMessage(line.at("client"), m.is_string() ? m.get<std::string>() : m.dump());
    } else if (e == "tick") {
      session.Step();
    } else if (e == "disconnect") {
      session.OnDisconnect(line.at("client"));
    } else {
      throw std::runtime_error("unknown transcript event '" + e + "'");
    }
  }
  return out;
}

std::vector<json> ReadTranscript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read transcript " + path);
  std::vector<json> lines;
  std::string text;
  while (std::getline(in, text)) {
    if (text.empty()) continue;
    lines.push_back(json::parse(text));
  }
  return lines;
}

}  // namespace gridlab::testing
