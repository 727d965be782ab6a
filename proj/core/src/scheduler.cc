#include "gridlab/scheduler.h"

#include <span>

#include "gridlab/errors.h"

namespace gridlab {

UpdateOrder::UpdateOrder(std::initializer_list<GroupUpdate> entries) {
  for (const auto& e : entries) Add(e.group, e.probability);
}

UpdateOrder& UpdateOrder::Add(std::string group, double probability) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw ConfigError("update probability for group '" + group + "' must be in [0, 1]");
  }
  entries_.push_back({std::move(group), probability});
  return *this;
}

std::vector<EngineEvent> Tick(World& world, const UpdateOrder& order) {
  if (!world.started()) throw StateError("tick before the world was started");
  if (!order.empty()) {
    std::vector<PieceId> members;
    for (const GroupUpdate& entry : order.entries()) {
      const GroupIndex group = world.Group(entry.group);
      if (!world.rng().Bernoulli(entry.probability)) continue;
      world.CollectGroupMembers(group, members);
      world.rng().Shuffle(std::span<PieceId>(members));
      for (PieceId id : members) world.DispatchUpdate(id, group);
    }
  }
  world.AdvanceTick();
  return world.DrainEvents();
}

}  // namespace gridlab
