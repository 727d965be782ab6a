#include "gridlab/session.h"

#include <algorithm>

#include <json.hpp>

#include "gridlab/base64.h"
#include "gridlab/errors.h"
#include "gridlab/runner.h"

namespace gridlab {

namespace {

using nlohmann::json;

json ToJson(const EventValue& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

json ToJson(const EventPayload& payload) {
  json out = json::object();
  for (const auto& [k, v] : payload) out[k] = ToJson(v);
  return out;
}

json ToJson(const EngineEvent& e) {
  return json{{"name", e.name}, {"step", e.step}, {"payload", ToJson(e.payload)}};
}

// Seats see events that name no player or name them; observers see all.
bool VisibleTo(const EngineEvent& e, int seat) {
  auto it = e.payload.find("player");
  if (it == e.payload.end()) return true;
  const double* p = std::get_if<double>(&it->second);
  return p != nullptr && static_cast<int>(*p) == seat;
}

std::string SeatName(const SeatSpec& s) {
  return s.kind == SeatSpec::Kind::kHuman ? "human" : "bot:" + s.policy;
}

EnvOptions SessionEnvOptions() {
  EnvOptions o;
  o.render_observations = true;
  return o;
}

}  // namespace

std::vector<SeatSpec> ParseSeats(std::string_view text) {
  std::vector<SeatSpec> seats;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(start, end - start);
    if (item == "human") {
      seats.push_back({SeatSpec::Kind::kHuman, ""});
    } else if (item.starts_with("bot:") && item.size() > 4) {
      seats.push_back({SeatSpec::Kind::kBot, std::string(item.substr(4))});
    } else {
      throw ConfigError("bad seat '" + std::string(item) + "'; expected human or bot:<policy>");
    }
    start = end + 1;
  }
  return seats;
}

Session::Session(SessionConfig config, Send send, Close close)
    : config_(std::move(config)),
      send_(std::move(send)),
      close_(std::move(close)),
      env_(MakeEnv(config_.env, static_cast<int>(config_.seats.size()), config_.seed,
                   SessionEnvOptions())) {
  if (config_.tick_ms < 1) throw ConfigError("tick interval must be positive");
  for (int p = 0; p < static_cast<int>(config_.seats.size()); ++p) {
    Seat seat;
    seat.spec = config_.seats[p];
    if (seat.spec.kind == SeatSpec::Kind::kBot) {
      seat.policy = MakePolicy(seat.spec.policy, PolicySeed(config_.seed, p));
    }
    seats_.push_back(std::move(seat));
  }
  MaybeStart();
}

std::optional<int> Session::SeatOf(ClientId client) const {
  auto it = clients_.find(client);
  if (it == clients_.end() || it->second.role != Role::kSeat) return std::nullopt;
  return it->second.seat;
}

void Session::OnConnect(ClientId client) { clients_[client] = Client{}; }

void Session::OnDisconnect(ClientId client) {
  auto it = clients_.find(client);
  if (it == clients_.end()) return;
  if (it->second.role == Role::kSeat) {
    Seat& seat = seats_[it->second.seat];
    seat.occupant.reset();
    seat.pending.reset();
  }
  clients_.erase(it);
}

void Session::Error(ClientId client, std::string_view code, std::string_view text) {
  send_(client, json{{"type", "error"}, {"code", code}, {"text", text}}.dump());
}

void Session::Violation(ClientId client, std::string_view code, std::string_view text) {
  Error(client, code, text);
  OnDisconnect(client);
  close_(client);
}

void Session::OnMessage(ClientId client, std::string_view text) {
  auto it = clients_.find(client);
  if (it == clients_.end()) return;
  json msg;
  try {
    msg = json::parse(text);
  } catch (const json::exception&) {
    return Violation(client, "bad_json", "message is not valid JSON");
  }
  if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
    return Violation(client, "bad_message", "message needs a string 'type'");
  }
  const std::string type = msg["type"];
  Client& state = it->second;

  if (type == "join") {
    const json role = msg.value("role", json());
    if (!role.is_string()) return Violation(client, "bad_message", "join needs a role");
    std::optional<int> seat;
    if (msg.contains("seat")) {
      if (!msg["seat"].is_number_integer()) {
        return Violation(client, "bad_message", "seat must be an integer");
      }
      seat = msg["seat"].get<int>();
    }
    const json token = msg.value("token", json(""));
    if (!token.is_string()) return Violation(client, "bad_message", "token must be a string");
    return Join(client, role.get<std::string>(), seat, token.get<std::string>());
  }
  if (type == "leave") {
    OnDisconnect(client);
    clients_[client] = Client{};
    return;
  }
  if (type == "reset") {
    if (state.role == Role::kNone) return Error(client, "not_joined", "join before reset");
    if (!started_) return Error(client, "not_started", "the episode has not started");
    if (env_.running()) return Error(client, "episode_running", "the episode has not ended");
    StartEpisode();
    return;
  }
  if (type == "action") {
    if (!msg.contains("step") || !msg["step"].is_number_integer() || !msg.contains("action") ||
        !msg["action"].is_number_integer()) {
      return Violation(client, "bad_message", "action needs integer 'step' and 'action'");
    }
    if (state.role != Role::kSeat) return Error(client, "not_seated", "only seats may act");
    if (!running()) return Error(client, "not_running", "no episode is running");
    const std::int64_t s = msg["step"];
    if (s != step()) {
      return Error(client, "stale_action", "action for step " + std::to_string(s) +
                                               " but the current step is " +
                                               std::to_string(step()));
    }
    const int a = msg["action"];
    if (a < 0 || a >= env_.action_spec().size()) {
      return Error(client, "bad_action", "action " + std::to_string(a) + " out of range");
    }
    seats_[state.seat].pending = a;  // last one in a tick wins
    return;
  }
  Violation(client, "bad_message", "unknown message type '" + type + "'");
}

void Session::Join(ClientId client, std::string_view role, std::optional<int> seat,
                   std::string_view token) {
  if (!config_.token.empty() && token != config_.token) {
    return Violation(client, "bad_token", "wrong session token");
  }
  Client& state = clients_[client];
  if (state.role != Role::kNone) return Error(client, "already_joined", "leave first");
  if (role == "observer") {
    if (!config_.observers) return Error(client, "observers_disabled", "observers are off");
    state.role = Role::kObserver;
    send_(client, Welcome(state));
    if (started_) send_(client, GlobalFrame());
    return;
  }
  if (role != "seat") return Violation(client, "bad_message", "role must be seat or observer");
  if (!seat) {
    // First free human seat.
    for (int s = 0; s < static_cast<int>(seats_.size()); ++s) {
      if (seats_[s].spec.kind == SeatSpec::Kind::kHuman && !seats_[s].occupant) {
        seat = s;
        break;
      }
    }
    if (!seat) return Error(client, "seat_taken", "no free human seat");
  }
  if (*seat < 0 || *seat >= static_cast<int>(seats_.size())) {
    return Error(client, "no_such_seat", "seat " + std::to_string(*seat) + " does not exist");
  }
  Seat& target = seats_[*seat];
  if (target.spec.kind != SeatSpec::Kind::kHuman) {
    return Error(client, "seat_not_human", "seat " + std::to_string(*seat) + " is a bot");
  }
  if (target.occupant) {
    return Error(client, "seat_taken", "seat " + std::to_string(*seat) + " is taken");
  }
  target.occupant = client;
  target.pending.reset();
  state.role = Role::kSeat;
  state.seat = *seat;
  send_(client, Welcome(state));
  if (started_) {
    // Rejoining mid-episode resumes at the current step.
    send_(client, SeatFrame(*seat));
  } else {
    MaybeStart();
  }
}

void Session::MaybeStart() {
  if (started_) return;
  for (const Seat& s : seats_) {
    if (s.spec.kind == SeatSpec::Kind::kHuman && !s.occupant) return;
  }
  started_ = true;
  StartEpisode();
}

void Session::StartEpisode() {
  env_.Reset();
  for (int p = 0; p < static_cast<int>(seats_.size()); ++p) {
    Seat& s = seats_[p];
    s.pending.reset();
    s.episode_return = 0;
    if (s.policy) s.policy->BeginEpisode(env_, p);
  }
  Broadcast();
}

bool Session::ReadyToStep() const {
  if (!running()) return false;
  bool any = false;
  for (const Seat& s : seats_) {
    if (s.spec.kind != SeatSpec::Kind::kHuman || !s.occupant) continue;
    any = true;
    if (!s.pending) return false;
  }
  return any;
}

bool Session::Step() {
  if (!started_) return false;
  if (!env_.running()) {
    const bool humans = std::any_of(seats_.begin(), seats_.end(), [](const Seat& s) {
      return s.spec.kind == SeatSpec::Kind::kHuman;
    });
    if (!humans) StartEpisode();
    return false;
  }
  std::vector<int> actions(seats_.size(), 0);
  for (int p = 0; p < static_cast<int>(seats_.size()); ++p) {
    Seat& s = seats_[p];
    if (s.policy) {
      actions[p] = s.policy->Act(env_, p);
    } else if (s.pending) {
      actions[p] = *s.pending;
    }
    s.pending.reset();
  }
  const StepResult& r = env_.Step(actions);
  for (int p = 0; p < static_cast<int>(seats_.size()); ++p) seats_[p].episode_return += r.rewards[p];
  ++steps_taken_;
  Broadcast();
  return true;
}

void Session::Broadcast() {
  std::optional<std::string> global;
  for (const auto& [id, client] : clients_) {
    if (client.role == Role::kSeat) {
      send_(id, SeatFrame(client.seat));
    } else if (client.role == Role::kObserver) {
      if (!global) global = GlobalFrame();
      send_(id, *global);
    }
  }
}

std::string Session::Welcome(const Client& client) const {
  json seats = json::array();
  for (const Seat& s : seats_) seats.push_back(SeatName(s.spec));
  json observations = json::array();
  for (const TensorSpec& t : env_.observation_spec()) {
    observations.push_back({{"name", t.name}, {"dtype", ToString(t.dtype)}, {"shape", t.shape}});
  }
  json msg = {
      {"type", "welcome"},
      {"env", env_.name()},
      {"num_players", env_.num_players()},
      {"seats", seats},
      {"actions", env_.action_spec().names},
      {"observations", observations},
      {"tick",
       {{"policy", config_.tick == TickPolicy::kLockstep ? "lockstep" : "fixed_rate"},
        {"ms", config_.tick_ms}}},
      {"episode", started_ ? env_.episode_index() : -1},
      {"step", step()},
      {"status", !started_ ? "waiting" : env_.running() ? "running" : "terminated"},
  };
  if (client.role == Role::kSeat) {
    msg["role"] = "seat";
    msg["seat"] = client.seat;
  } else {
    msg["role"] = "observer";
    const World* w = env_.has_episode() ? &env_.world() : nullptr;
    if (w != nullptr) {
      Frame f;
      env_.RenderGlobal(f);
      msg["global"] = {{"width", f.width}, {"height", f.height}};
    }
  }
  return msg.dump();
}

std::string Session::SeatFrame(int seat) const {
  const StepResult& r = env_.last_result();
  json observations = json::object();
  const auto& specs = env_.observation_spec();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Tensor& t = r.observations[seat][i];
    if (t.dtype == DType::kUint8 && t.shape.size() == 3 && t.shape[2] == 3) {
      observations[specs[i].name] = {{"height", t.shape[0]},
                                     {"width", t.shape[1]},
                                     {"encoding", "base64"},
                                     {"data", Base64Encode(t.bytes)}};
    } else if (t.dtype == DType::kUint8) {
      observations[specs[i].name] = {
          {"shape", t.shape}, {"encoding", "base64"}, {"data", Base64Encode(t.bytes)}};
    } else {
      observations[specs[i].name] = {{"shape", t.shape}, {"values", t.values}};
    }
  }
  json events = json::array();
  for (const auto& e : r.events) {
    if (VisibleTo(e, seat)) events.push_back(ToJson(e));
  }
  return json{{"type", "frame"},
              {"episode", env_.episode_index()},
              {"step", r.step},
              {"seat", seat},
              {"observations", observations},
              {"reward", r.rewards[seat]},
              {"return", seats_[seat].episode_return},
              {"events", events},
              {"status", r.terminated ? "terminated" : "running"},
              {"reason", r.termination_reason}}
      .dump();
}

std::string Session::GlobalFrame() const {
  const StepResult& r = env_.last_result();
  env_.RenderGlobal(global_);
  json players = json::array();
  json returns = json::array();
  for (int p = 0; p < env_.num_players(); ++p) {
    players.push_back(ToJson(env_.PlayerSummary(p)));
    returns.push_back(seats_[p].episode_return);
  }
  json events = json::array();
  for (const auto& e : r.events) events.push_back(ToJson(e));
  return json{{"type", "global_frame"},
              {"episode", env_.episode_index()},
              {"step", r.step},
              {"width", global_.width},
              {"height", global_.height},
              {"encoding", "base64"},
              {"data", Base64Encode(global_.pixels)},
              {"players", players},
              {"rewards", r.rewards},
              {"returns", returns},
              {"events", events},
              {"status", r.terminated ? "terminated" : "running"},
              {"reason", r.termination_reason}}
      .dump();
}

}  // namespace gridlab
