#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbc {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitExhausted = 3;

// Runs the tool on `args` (without the program name).  Normal output goes to
// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbc
