#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sbm::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kUsageError = 2,
  kNumericFailure = 3,
};

/// Runs one command.  `args` excludes the program name.  Tables and reports
/// go to --out (or `out`), diagnostics and, without --out, the run manifest
/// go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sbm::cli
