#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gfra::cli {

enum ExitCode : int {
    kOk = 0,
    kRuntimeError = 1,
    kConfigError = 2,
    kVerificationFailed = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out` (or the --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gfra::cli
