#pragma once

#include <ostream>
#include <span>
#include <string>

namespace cheshire::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // scored failure or degenerate physics
inline constexpr int kExitUsage = 2;    // bad flags, config or IO

// Overrides the default output directory of `reproduce`.
inline constexpr const char* kOutputDirEnv = "CHESHIRE_OUTPUT_DIR";
inline constexpr const char* kDefaultOutputDir = "cheshire_output";

// Runs the command line `args` (program name excluded). Data goes to `out`
// unless --output names a file; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cheshire::cli
