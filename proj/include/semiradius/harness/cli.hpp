#pragma once

#include <ostream>

namespace semiradius::harness {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_counterexample = 1,
    exit_usage = 2,
    exit_io = 3,         // unreadable file or malformed content
    exit_invalid = 4,    // dimension mismatch, non-PSD A, non-adjointable T, ...
};

/// Subcommands gen, radius, bounds, range, verify. Results go to `out` (or
/// --out), diagnostics to `err` as a single line.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace semiradius::harness
