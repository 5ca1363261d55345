// Acceptance suite: one pass/fail line per criterion; exit code is the
// number of failures.

#include <cstdio>

#include "multitrace/selftest.hpp"

int main() {
  multitrace::AcceptanceOptions opts;
  const auto results = multitrace::run_acceptance(opts);
  int failures = 0;
  double total = 0.0;
  for (const auto& r : results) {
    total += r.seconds;
    if (!r.pass) ++failures;
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.pass ? "" : " -- ",
                r.pass ? "" : r.detail.c_str());
  }
  std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(results.size()) - failures,
              results.size(), total);
  return failures;
}
