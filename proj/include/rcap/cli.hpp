#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rcap {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes returned by run_cli.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitParse = 3,
    kExitLimit = 4,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcap
