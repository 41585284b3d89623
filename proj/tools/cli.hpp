#pragma once

// Front end for the `ufavg` tool. Kept out of main.cpp so tests can drive it
// in-process.
//
// Exit codes: 0 success, 2 usage or input error, 3 numerical failure,
// 4 verification failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace ufavg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

/// Environment variable that overrides the default equality tolerance.
inline constexpr const char* kToleranceEnv = "UFAVG_TOLERANCE";

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ufavg::cli
