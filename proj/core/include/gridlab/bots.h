#ifndef GRIDLAB_BOTS_H_
#define GRIDLAB_BOTS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gridlab/env.h"
#include "gridlab/rng.h"

namespace gridlab {

// A scripted player. Policies read the env but never mutate it.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual void BeginEpisode(const Env&, int /*player*/) {}
  virtual int Act(const Env& env, int player) = 0;
};

// random            uniform over the action set
// noop              always action 0
// collect-<r>       (rws) picks up 3 of resource r, then hunts
// hunter            (rws) picks up any 2 resources, then hunts
//
// Hunting means walking to a cell in line with the opponent, turning to face
// it and firing. Throws ConfigError for unknown names.
std::unique_ptr<Policy> MakePolicy(std::string_view name, std::uint64_t seed = 0);
std::vector<std::string> AvailablePolicies();

}  // namespace gridlab

#endif  // GRIDLAB_BOTS_H_
