#pragma once

// The randers command-line front end, callable in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace randers {

/// Exit codes: 0 pass, 1 property failure, 2 usage or parse error.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Runs the CLI on `args` (without the program name). Reports and CSV go to
/// `out` unless --out is given; diagnostics and logs go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace randers
