#pragma once

#include <iosfwd>

namespace m2q::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,            // success / NO-consistent
  kFailure = 1,       // unexpected error, or a failed limitation verdict
  kUsage = 2,         // usage, parse or validation error
  kYesWitnessed = 3,
  kInconclusive = 4,
  kResourceCap = 5,
};

/// Runs the command line; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace m2q::cli
