#pragma once

#include <ostream>
#include <span>
#include <string>

namespace tierselect::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // nothing feasible, invalid input, unreadable file
inline constexpr int kExitUsage = 2;

/// Runs one command line (args exclude the program name). Subcommands:
/// evaluate, explain, sweep, pareto, validate, serve.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tierselect::cli
