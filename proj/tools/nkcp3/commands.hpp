#pragma once

#include <iosfwd>

namespace nkcp3::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNumeric = 3;

/// Runs the command line; reports go to `out`, diagnostics and help to `err`.
/// Failures print {"error": {"kind": ..., "detail": ...}} on `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nkcp3::cli
