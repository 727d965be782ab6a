#ifndef GRIDLAB_TOOLS_COMMANDS_H_
#define GRIDLAB_TOOLS_COMMANDS_H_

#include <functional>

#include <CLI11.hpp>

namespace gridlab::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // e.g. replay divergence
inline constexpr int kUsage = 2;    // bad flags, unknown env, corrupt input

// Each Add* registers a subcommand; the returned callback runs it and
// yields the exit code.
using Runner = std::function<int()>;

Runner AddBench(CLI::App& app);
Runner AddRun(CLI::App& app);
Runner AddReplay(CLI::App& app);
Runner AddServe(CLI::App& app);

}  // namespace gridlab::cli

#endif  // GRIDLAB_TOOLS_COMMANDS_H_
