#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gcdd::cli {

/// Exit codes: 0 success, 1 data or runtime error, 2 usage error.
enum ExitCode : int { kOk = 0, kDataError = 1, kUsageError = 2 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace gcdd::cli
