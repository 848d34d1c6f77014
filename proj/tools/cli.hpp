#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stochdyn::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,        // unreadable or malformed spec file
  kExitAnalysis = 3,     // validation or spectral failure
  kExitWrite = 4,        // output file could not be written
  kExitNotPlottable = 5, // plot requested for a non 2-state chain
};

// Runs `stochdyn <args...>`; args[0] is the program name. Reports go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace stochdyn::cli
