#pragma once

// Command-line front end: eval, check, suite and show.

#include <iosfwd>

namespace qconnect {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qconnect
