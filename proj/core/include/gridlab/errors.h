#ifndef GRIDLAB_ERRORS_H_
#define GRIDLAB_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace gridlab {

// Base of every error the engine throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration: duplicate names, unknown layers/states/groups,
// out-of-range actions, non-serializable event payloads.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// add_piece onto an occupied or out-of-grid cell.
class PlacementBlocked : public Error {
 public:
  using Error::Error;
};

// Unknown piece handle, or an operation needing an on-board piece got an
// off-board one.
class InvalidPiece : public Error {
 public:
  using Error::Error;
};

// A callback faulted, or callback recursion exceeded the depth bound.
class TickError : public Error {
 public:
  TickError(std::uint32_t piece, std::string callback, const std::string& what)
      : Error("callback '" + callback + "' on piece " + std::to_string(piece) +
              ": " + what),
        piece_(piece),
        callback_(std::move(callback)) {}

  std::uint32_t piece() const { return piece_; }
  const std::string& callback() const { return callback_; }

 private:
  std::uint32_t piece_;
  std::string callback_;
};

class RenderError : public Error {
 public:
  using Error::Error;
};

// Env used out of order: step before reset or after termination.
class StateError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class PermissionError : public Error {
 public:
  using Error::Error;
};

}  // namespace gridlab

#endif  // GRIDLAB_ERRORS_H_
