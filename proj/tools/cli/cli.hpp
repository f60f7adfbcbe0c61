#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wallrig::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kInputError = 2,
  kInternal = 3,
  kResource = 4,
  kMismatch = 5,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wallrig::cli
