#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopfo::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kUsage = 2,
  kInput = 3,
  kBudget = 4,
  kProver = 5,
};

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace loopfo::cli
