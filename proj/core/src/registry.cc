#include "gridlab/env.h"
#include "gridlab/errors.h"
#include "gridlab/rws.h"

namespace gridlab {

std::vector<std::string> AvailableEnvironments() { return {"rws"}; }

std::unique_ptr<EnvironmentDefinition> MakeDefinition(std::string_view name) {
  if (name == "rws") return std::make_unique<rws::RunningWithScissors>();
  throw ConfigError("unknown environment '" + std::string(name) + "'");
}

Env MakeEnv(std::string_view name, int num_players, std::uint64_t seed, EnvOptions options) {
  return Env(MakeDefinition(name), num_players, seed, std::move(options));
}

}  // namespace gridlab
