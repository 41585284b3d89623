// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if any fail.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ufavg/verify.hpp"

int main(int argc, char** argv) {
  ufavg::VerifyConfig config;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--no-runtime-limits") == 0) config.enforce_runtime = false;
  }
  int failures = 0;
  for (const auto& r : ufavg::run_acceptance(config)) {
    std::printf("%s %s: %s [%s] (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.name.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    if (!r.passed) ++failures;
  }
  std::printf("%d/8 acceptance criteria passed\n", 8 - failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
