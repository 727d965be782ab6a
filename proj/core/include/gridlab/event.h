#ifndef GRIDLAB_EVENT_H_
#define GRIDLAB_EVENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace gridlab {

using EventValue = std::variant<std::string, double, std::vector<std::string>,
                                std::vector<double>>;

using EventPayload = std::map<std::string, EventValue>;

// A named notification raised by environment logic. `step` is the world tick
// during which it was raised.
struct EngineEvent {
  std::string name;
  EventPayload payload;
  std::int64_t step = 0;

  bool operator==(const EngineEvent&) const = default;
};

// Throws ConfigError if any number in the payload is NaN or infinite.
void ValidatePayload(const EventPayload& payload);

}  // namespace gridlab

#endif  // GRIDLAB_EVENT_H_
