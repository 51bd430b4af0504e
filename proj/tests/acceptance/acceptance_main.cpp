#include <chrono>
#include <cstdio>

#include "cic/verify.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto results = cic::run_all({});
  const double total = std::chrono::duration<double>(clock::now() - start).count();

  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::printf("%s criterion %d: %s (%.3f s) %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
  }
  const bool fast = total < 60.0;
  std::printf("%s total runtime %.3f s (limit 60 s)\n", fast ? "PASS" : "FAIL", total);
  return all && fast ? 0 : 1;
}
