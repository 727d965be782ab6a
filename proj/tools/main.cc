// gridlab: benchmark, run, replay and serve grid environments.
#include <iostream>
#include <map>

#include "commands.h"
#include "gridlab/errors.h"

int main(int argc, char** argv) {
  using namespace gridlab::cli;
  CLI::App app{"gridlab: layered 2D grid environments"};
  app.require_subcommand(1);
  std::map<CLI::App*, Runner> runners;
  auto add = [&](Runner (*fn)(CLI::App&)) {
    const std::size_t before = app.get_subcommands({}).size();
    Runner r = fn(app);
    runners[app.get_subcommands({})[before]] = std::move(r);
  };
  add(AddBench);
  add(AddRun);
  add(AddReplay);
#ifdef GRIDLAB_WITH_SERVICE
  add(AddServe);
#endif

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  for (auto& [sub, run] : runners) {
    if (!sub->parsed()) continue;
    try {
      return run();
    } catch (const gridlab::ConfigError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kFailure;
    }
  }
  return kUsage;
}
