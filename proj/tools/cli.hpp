#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace muhard::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2, kBudget = 3 };

/// Runs the command line `muhard <args...>`. The JSON report goes to out
/// (and to --report when given); diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a file's bytes.
std::string file_digest(const std::string& path);

}  // namespace muhard::cli
