#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lorcomp::cli {

enum ExitStatus : int {
  kComputed = 0,
  kInternalError = 1,
  kInputError = 2,
  kRegimeError = 3,
};

// Runs one job. The machine report goes to `out` (or --out), a short human
// summary to `err`. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lorcomp::cli
