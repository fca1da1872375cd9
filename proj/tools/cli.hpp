#pragma once

#include <iosfwd>

namespace rtlab::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command line. Results go to `out`, diagnostics and usage to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rtlab::cli
