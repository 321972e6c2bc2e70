#pragma once

#include <iosfwd>

namespace fieldstar::cli {

/// Exit codes of the command-line surface.
inline constexpr int kOk = 0;
inline constexpr int kResidual = 1;
inline constexpr int kUsage = 2;

/// Entry point of the fieldstar tool; all output goes to the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fieldstar::cli
