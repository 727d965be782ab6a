#include "gridlab/episode_record.h"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace gridlab {

namespace {

using nlohmann::json;

std::string Hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::uint64_t ParseHex(const json& j, const char* field) {
  if (!j.is_string()) throw RecordError(std::string(field) + " must be a hex string");
  const std::string& s = j.get_ref<const std::string&>();
  if (s.empty() || s.size() > 16) throw RecordError(std::string(field) + " is not a 64-bit hex value");
  std::uint64_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else {
      throw RecordError(std::string(field) + " is not a 64-bit hex value");
    }
    v = v << 4 | static_cast<std::uint64_t>(d);
  }
  return v;
}

json EventJson(const EngineEvent& e) {
  json payload = json::object();
  for (const auto& [key, value] : e.payload) {
    std::visit([&, &k = key](const auto& v) { payload[k] = v; }, value);
  }
  return json{{"name", e.name}, {"step", e.step}, {"payload", payload}};
}

EngineEvent ParseEvent(const json& j) {
  EngineEvent e;
  e.name = j.at("name").get<std::string>();
  e.step = j.at("step").get<std::int64_t>();
  for (const auto& [key, v] : j.at("payload").items()) {
    if (v.is_string()) {
      e.payload[key] = v.get<std::string>();
    } else if (v.is_number()) {
      e.payload[key] = v.get<double>();
    } else if (v.is_array() && !v.empty() && v.front().is_string()) {
      e.payload[key] = v.get<std::vector<std::string>>();
    } else if (v.is_array()) {
      e.payload[key] = v.get<std::vector<double>>();
    } else {
      throw RecordError("event payload '" + key + "' has an unsupported type");
    }
  }
  return e;
}

bool SameBits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

std::string FormatDoubles(const std::vector<double>& v) { return json(v).dump(); }

}  // namespace

std::string EventToJson(const EngineEvent& event) { return EventJson(event).dump(); }

void EpisodeRecorder::Begin(const Env& env, std::uint64_t root_seed, std::vector<std::string> bots,
                            std::map<std::string, std::string> properties) {
  json header = {
      {"type", "header"},
      {"format", "gridlab-episode"},
      {"version", kRecordVersion},
      {"env", env.name()},
      {"num_players", env.num_players()},
      {"root_seed", Hex(root_seed)},
      {"episode_index", env.episode_index()},
      {"episode_seed", Hex(env.episode_seed())},
      {"spec_hash", Hex(env.SpecHash())},
      {"render_observations", env.options().render_observations},
      {"properties", properties},
      {"bots", bots},
  };
  out_ << header.dump() << '\n';
}

void EpisodeRecorder::Step(std::span<const int> actions, const StepResult& result) {
  json events = json::array();
  for (const auto& e : result.events) events.push_back(EventJson(e));
  json line = {
      {"type", "step"},
      {"step", result.step},
      {"actions", std::vector<int>(actions.begin(), actions.end())},
      {"rewards", result.rewards},
      {"events", std::move(events)},
      {"terminated", result.terminated},
      {"reason", result.termination_reason},
  };
  out_ << line.dump() << '\n';
}

void EpisodeRecorder::End(const Env& env) {
  json line = {
      {"type", "end"},
      {"steps", env.episode_step()},
      {"reason", env.context().termination_reason()},
      {"world_hash", Hex(env.world().Hash())},
  };
  out_ << line.dump() << '\n';
  out_.flush();
}

std::vector<EpisodeRecord> ReadEpisodeRecords(std::istream& in) {
  std::vector<EpisodeRecord> records;
  std::string text;
  int line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    const std::string where = "record line " + std::to_string(line_no) + ": ";
    try {
      const json j = json::parse(text);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        if (j.at("format") != "gridlab-episode") throw RecordError(where + "not an episode record");
        if (j.at("version") != kRecordVersion) {
          throw RecordError(where + "unsupported record version " + j.at("version").dump());
        }
        if (!records.empty() && !records.back().complete) {
          throw RecordError(where + "header before the previous episode ended");
        }
        EpisodeRecord r;
        EpisodeHeader& h = r.header;
        h.env = j.at("env").get<std::string>();
        h.num_players = j.at("num_players").get<int>();
        h.root_seed = ParseHex(j.at("root_seed"), "root_seed");
        h.episode_index = j.at("episode_index").get<std::int64_t>();
        h.episode_seed = ParseHex(j.at("episode_seed"), "episode_seed");
        h.spec_hash = ParseHex(j.at("spec_hash"), "spec_hash");
        h.render_observations = j.at("render_observations").get<bool>();
        h.properties = j.at("properties").get<std::map<std::string, std::string>>();
        h.bots = j.at("bots").get<std::vector<std::string>>();
        records.push_back(std::move(r));
        continue;
      }
      if (records.empty() || records.back().complete) {
        throw RecordError(where + "'" + type + "' line outside an episode");
      }
      EpisodeRecord& r = records.back();
      if (type == "step") {
        StepRecord s;
        s.step = j.at("step").get<std::int64_t>();
        s.actions = j.at("actions").get<std::vector<int>>();
        s.rewards = j.at("rewards").get<std::vector<double>>();
        for (const auto& e : j.at("events")) s.events.push_back(ParseEvent(e));
        s.terminated = j.at("terminated").get<bool>();
        s.reason = j.at("reason").get<std::string>();
        r.steps.push_back(std::move(s));
      } else if (type == "end") {
        r.final_step = j.at("steps").get<std::int64_t>();
        r.termination_reason = j.at("reason").get<std::string>();
        r.world_hash = ParseHex(j.at("world_hash"), "world_hash");
        r.complete = true;
      } else {
        throw RecordError(where + "unknown line type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw RecordError(where + e.what());
    }
  }
  if (!records.empty() && !records.back().complete) {
    throw RecordError("record ends inside an episode");
  }
  return records;
}

ReplayReport Replay(const EpisodeRecord& record) {
  const EpisodeHeader& h = record.header;
  ReplayReport report;
  auto fail = [&](std::int64_t step, std::string detail) {
    report.ok = false;
    report.step = step;
    report.detail = std::move(detail);
    return report;
  };

  EnvOptions options;
  options.render_observations = h.render_observations;
  Env env = MakeEnv(h.env, h.num_players, h.root_seed, options);
  if (env.SpecHash() != h.spec_hash) {
    return fail(0, "spec hash " + Hex(env.SpecHash()) + " differs from recorded " + Hex(h.spec_hash));
  }
  for (const auto& [path, value] : h.properties) env.WriteProperty(path, value);
  env.ResetWithSeed(h.episode_seed);

  for (const StepRecord& s : record.steps) {
    if (!env.running()) return fail(s.step, "episode already ended before this step");
    const StepResult& r = env.Step(s.actions);
    if (r.step != s.step) {
      return fail(s.step, "step index " + std::to_string(r.step) + " != recorded " +
                              std::to_string(s.step));
    }
    bool rewards_match = r.rewards.size() == s.rewards.size();
    for (std::size_t i = 0; rewards_match && i < r.rewards.size(); ++i) {
      rewards_match = SameBits(r.rewards[i], s.rewards[i]);
    }
    if (!rewards_match) {
      return fail(s.step, "rewards " + FormatDoubles(r.rewards) + " != recorded " +
                              FormatDoubles(s.rewards));
    }
    if (r.events.size() != s.events.size()) {
      return fail(s.step, std::to_string(r.events.size()) + " events != recorded " +
                              std::to_string(s.events.size()));
    }
    for (std::size_t i = 0; i < r.events.size(); ++i) {
      const std::string got = EventToJson(r.events[i]);
      const std::string want = EventToJson(s.events[i]);
      if (got != want) return fail(s.step, "event " + got + " != recorded " + want);
    }
    if (r.terminated != s.terminated || r.termination_reason != s.reason) {
      return fail(s.step, "termination '" + r.termination_reason + "' != recorded '" + s.reason +
                              "'");
    }
  }
  report.world_hash = env.world().Hash();
  const std::int64_t last = record.steps.empty() ? 0 : record.steps.back().step;
  if (record.complete && report.world_hash != record.world_hash) {
    return fail(last, "final world hash " + Hex(report.world_hash) + " != recorded " +
                          Hex(record.world_hash));
  }
  return report;
}

}  // namespace gridlab
