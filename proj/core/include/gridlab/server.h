#ifndef GRIDLAB_SERVER_H_
#define GRIDLAB_SERVER_H_

#include <cstdint>
#include <memory>
#include <string>

#include "gridlab/session.h"

namespace gridlab {

struct ServerOptions {
  std::string address = "127.0.0.1";
  std::uint16_t port = 0;  // 0 = any free port
  // When set, plain HTTP GETs are answered from this directory ("/" serves
  // index.html). WebSocket upgrades are accepted on any path.
  std::string static_dir;
};

// WebSocket front end for one Session. All session calls and the tick timer
// run on a single I/O thread.
class Server {
 public:
  // Binds immediately; throws Error when the address cannot be bound.
  Server(SessionConfig config, ServerOptions options);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const;

  // Serves until Stop(). Call from one thread only.
  void Run();
  // Safe from any thread.
  void Stop();

  struct Impl;  // I/O internals, defined in server.cc

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace gridlab

#endif  // GRIDLAB_SERVER_H_
