#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lwheel {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFound = 1,        // audit violations or pattern present
  kExitUsage = 2,        // bad flags, unreadable or malformed input
  kExitInfeasible = 3,   // uniform m below the minimum
  kExitInconclusive = 4  // detector budget exhausted
};

/// Runs one invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lwheel
