#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tradecone {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitNoConvergence = 4,
  kExitNotNegativeType = 5,
};

/// Runs the tool on args (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tradecone
