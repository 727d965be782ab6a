#ifndef GRIDLAB_SCHEDULER_H_
#define GRIDLAB_SCHEDULER_H_

#include <string>
#include <vector>

#include "gridlab/event.h"
#include "gridlab/world.h"

namespace gridlab {

struct GroupUpdate {
  std::string group;
  double probability = 1.0;  // chance the group updates on a given tick
};

// Ordered list of groups whose onUpdate handlers run each tick.
class UpdateOrder {
 public:
  UpdateOrder() = default;
  UpdateOrder(std::initializer_list<GroupUpdate> entries);

  // Throws ConfigError unless probability is in [0, 1].
  UpdateOrder& Add(std::string group, double probability = 1.0);

  const std::vector<GroupUpdate>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<GroupUpdate> entries_;
};

// Runs one simulation tick:
//   for each group in order
//     skip it when Bernoulli(p) fails (no RNG draw for p = 0 or p = 1),
//     snapshot its on-board members, Fisher-Yates shuffle them,
//     invoke onUpdate for each member still on-board and in the group.
// Contact and lifecycle callbacks fire inline. Returns every event raised
// since the previous drain and advances the tick counter.
//
// Throws StateError before World::Start(), ConfigError for unknown groups and
// TickError when a callback faults.
std::vector<EngineEvent> Tick(World& world, const UpdateOrder& order);

}  // namespace gridlab

#endif  // GRIDLAB_SCHEDULER_H_
