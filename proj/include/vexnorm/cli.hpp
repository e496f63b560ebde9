#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vexnorm {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitNumeric = 3 };

/// Runs one subcommand; args excludes the program name. The JSON summary
/// goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vexnorm
