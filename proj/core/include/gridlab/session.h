#ifndef GRIDLAB_SESSION_H_
#define GRIDLAB_SESSION_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridlab/bots.h"
#include "gridlab/env.h"
#include "gridlab/render.h"

// A live, shared episode for human seats, bot seats and observers. The
// session is transport-agnostic: the server feeds it connection events and
// text messages and it answers through a send callback. All env mutation
// happens inside Session calls, so the owner must serialize them.
//
// Wire protocol: one JSON object per text message, keyed by "type".
//
//   client -> server
//     {"type":"join","role":"seat","seat":0,"token":"..."}
//     {"type":"join","role":"observer","token":"..."}
//     {"type":"action","step":17,"action":1}   action for the step after 17
//     {"type":"leave"}
//     {"type":"reset"}                         start the next episode once
//                                              the current one has ended
//   server -> client
//     {"type":"welcome",...}       role, seat, specs, tick policy, state
//     {"type":"frame",...}         per seat, after every env step and reset
//     {"type":"global_frame",...}  observers: whole world plus per-player
//                                  summaries, rewards and every event
//     {"type":"error","code":"stale_action","text":"..."}
//
// RGB payloads are row-major, 3 bytes per pixel (R, G, B), top row first,
// encoded as RFC 4648 base64 with padding.
namespace gridlab {

using ClientId = std::uint64_t;

struct SeatSpec {
  enum class Kind { kHuman, kBot };
  Kind kind = Kind::kHuman;
  std::string policy;  // bots only

  bool operator==(const SeatSpec&) const = default;
};

// Parses "human,bot:collect-rock". Throws ConfigError.
std::vector<SeatSpec> ParseSeats(std::string_view text);

enum class TickPolicy {
  kFixedRate,  // step every tick_ms; missing human actions become no-ops
  kLockstep,   // step once every connected human has acted, or after tick_ms
};

struct SessionConfig {
  std::string env = "rws";
  std::vector<SeatSpec> seats;
  TickPolicy tick = TickPolicy::kFixedRate;
  int tick_ms = 200;
  bool observers = true;
  std::uint64_t seed = 0;
  std::string token;  // required by join; empty accepts any token
};

class Session {
 public:
  using Send = std::function<void(ClientId, const std::string&)>;
  using Close = std::function<void(ClientId)>;

  // Throws ConfigError when the seat count does not match the env or a bot
  // policy is unknown.
  Session(SessionConfig config, Send send, Close close);

  void OnConnect(ClientId client);
  void OnMessage(ClientId client, std::string_view text);
  void OnDisconnect(ClientId client);

  // Fills missing actions with no-ops, steps the env once and broadcasts.
  // Returns false (and does nothing) unless an episode is running.
  bool Step();

  // Lockstep: true once every connected human seat has submitted.
  bool ReadyToStep() const;

  bool running() const { return env_.running() && started_; }
  bool started() const { return started_; }
  std::int64_t step() const { return env_.has_episode() ? env_.episode_step() : 0; }
  std::int64_t episode() const { return env_.episode_index(); }
  std::int64_t steps_taken() const { return steps_taken_; }
  const Env& env() const { return env_; }
  const SessionConfig& config() const { return config_; }
  std::optional<int> SeatOf(ClientId client) const;

 private:
  enum class Role { kNone, kSeat, kObserver };
  struct Client {
    Role role = Role::kNone;
    int seat = -1;
  };
  struct Seat {
    SeatSpec spec;
    std::optional<ClientId> occupant;
    std::optional<int> pending;  // action for the current step
    std::unique_ptr<Policy> policy;
    double episode_return = 0;
  };

  void Join(ClientId client, std::string_view role, std::optional<int> seat,
            std::string_view token);
  void Error(ClientId client, std::string_view code, std::string_view text);
  void Violation(ClientId client, std::string_view code, std::string_view text);
  void MaybeStart();
  void StartEpisode();
  void Broadcast();
  std::string SeatFrame(int seat) const;
  std::string GlobalFrame() const;
  std::string Welcome(const Client& client) const;

  SessionConfig config_;
  Send send_;
  Close close_;
  Env env_;
  std::vector<Seat> seats_;
  std::map<ClientId, Client> clients_;
  bool started_ = false;
  std::int64_t steps_taken_ = 0;
  mutable Frame global_;
};

}  // namespace gridlab

#endif  // GRIDLAB_SESSION_H_
