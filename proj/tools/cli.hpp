#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fibertrace::cli {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kGenericity = 3, kInvariant = 4 };

// Runs one subcommand. Machine output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibertrace::cli
