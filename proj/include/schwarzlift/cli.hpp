#pragma once

#include <ostream>

namespace schwarzlift {

enum ExitCode : int { kExitPass = 0, kExitViolated = 2, kExitCollision = 3, kExitFailure = 4 };

/// Entry point of the command-line tool; reports go to `out`, diagnostics
/// to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schwarzlift
