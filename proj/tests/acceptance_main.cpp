// Acceptance suite runner: one pass/fail line per criterion.
#include <cstdio>
#include <string>

#include "spar/numerics/parallel.hpp"
#include "spar/verify/acceptance.hpp"

int main(int argc, char** argv) {
  std::string suite = "all";
  if (argc > 1) suite = argv[1];
  const unsigned threads = spar::num::default_threads();
  const auto results = spar::verify::run_acceptance(suite, threads);
  if (results.empty()) {
    std::fprintf(stderr, "unknown suite '%s'\n", suite.c_str());
    return 2;
  }
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-70s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%zu criteria run, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
