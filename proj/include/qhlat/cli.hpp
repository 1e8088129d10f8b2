#pragma once

#include <iosfwd>

namespace qhlat {

inline constexpr const char* kVersion = "0.1.0";

// Entry point of the command-line tool. Writes results to `out` (or the --out
// file) and diagnostics to `err`. Returns the process exit code:
// 0 success, 2 input error, 3 numerical failure, 4 nothing found in range.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qhlat
