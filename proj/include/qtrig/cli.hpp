#pragma once

#include <ostream>

namespace qtrig::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,             // bad flags, unreadable or malformed input files
  kInvalidInterval = 2,   // d(a,b;q^i) vanishes
  kSingular = 3,          // rational denominator vanishes
  kViolation = 4,         // a shape check failed
};

/// Runs the `qtrig` command line. Data go to `out` (unless --out names a
/// file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qtrig::cli
