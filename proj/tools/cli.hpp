#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qam::cli {

/// Exit codes of the `qam` tool.
enum ExitCode : int { kOk = 0, kUsage = 1, kViolation = 2 };

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// The report goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qam::cli
