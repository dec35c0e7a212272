#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace omega {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
    kExitParse = 3,
    kExitValidation = 4,
    kExitConvergence = 5,
    kExitInternal = 70,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omega
