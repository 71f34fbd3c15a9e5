#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cbs::cli {

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kUsage = 2, kNumericFailure = 3 };

/// Runs one command line (args excludes the program name). Machine output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbs::cli
