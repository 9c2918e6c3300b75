#pragma once

#include <iosfwd>

namespace memristor {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  ///< e.g. a gate table that misses its target
    kExitInput = 2,    ///< input, parse, config or I/O error
    kExitNumerical = 3,
};

/// Entry point of the `memristor` executable. Diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace memristor
