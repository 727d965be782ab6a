#include <cinttypes>
#include <cstdio>
#include <memory>
#include <random>

#include "commands.h"
#include "gridlab/server.h"

namespace gridlab::cli {

namespace {

struct ServeFlags {
  std::string env = "rws";
  std::string seats = "human,bot:collect-rock";
  int tick_ms = 200;
  bool lockstep = false;
  bool no_observers = false;
  std::uint64_t seed = 0;
  std::string token;
  ServerOptions server;
};

std::string RandomToken() {
  std::random_device rd;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%08x%08x", rd(), rd());
  return buf;
}

}  // namespace

Runner AddServe(CLI::App& app) {
  auto* cmd = app.add_subcommand("serve", "Host a live session over WebSocket");
  auto f = std::make_shared<ServeFlags>();
  f->server.port = 8080;
  cmd->add_option("--env", f->env, "Environment name")->capture_default_str();
  cmd->add_option("--seats", f->seats, "Comma-separated seats: human or bot:<policy>")
      ->capture_default_str();
  cmd->add_option("--tick-ms", f->tick_ms,
                  "Fixed-rate tick interval, or the lockstep timeout, in milliseconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--lockstep", f->lockstep, "Step as soon as every connected human has acted");
  cmd->add_flag("--no-observers", f->no_observers, "Refuse observer joins");
  cmd->add_option("--port", f->server.port, "TCP port (0 picks a free one)")->capture_default_str();
  cmd->add_option("--address", f->server.address, "Bind address")->capture_default_str();
  cmd->add_option("--static", f->server.static_dir, "Directory served over HTTP at /");
  cmd->add_option("--seed", f->seed, "Root seed")->capture_default_str();
  cmd->add_option("--token", f->token, "Join token (random when omitted)");

  return [f] {
    SessionConfig config;
    config.env = f->env;
    config.seats = ParseSeats(f->seats);
    config.tick = f->lockstep ? TickPolicy::kLockstep : TickPolicy::kFixedRate;
    config.tick_ms = f->tick_ms;
    config.observers = !f->no_observers;
    config.seed = f->seed;
    config.token = f->token.empty() ? RandomToken() : f->token;
    Server server(config, f->server);
    std::printf("serving %s on ws://%s:%u  seats %s  tick %s %d ms\n", config.env.c_str(),
                f->server.address.c_str(), static_cast<unsigned>(server.port()),
                f->seats.c_str(), f->lockstep ? "lockstep" : "fixed-rate", config.tick_ms);
    std::printf("token %s\n", config.token.c_str());
    std::fflush(stdout);
    server.Run();
    return kOk;
  };
}

}  // namespace gridlab::cli
