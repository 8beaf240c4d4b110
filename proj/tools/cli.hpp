#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ruck::cli {

// Stable exit-code contract for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSampler = 3;
inline constexpr int kExitDiagnostics = 4;

/// Runs the command line given the arguments after argv[0]. All output goes
/// to the supplied streams; every subcommand is deterministic given its
/// flags.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ruck::cli
