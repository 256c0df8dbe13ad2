#pragma once

// Command-line front end. Subcommands: solve, verify, limits, grid, dump-matrix.
// Exit codes: 0 ok, 1 usage / IO / validation error, 2 checks failed (the
// report is still written).

#include <iosfwd>

namespace qes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

/// Machine output goes to `out` (unless --output names a file), diagnostics
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qes::cli
