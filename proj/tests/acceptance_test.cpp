// Acceptance gate: runs the fixture corpus and prints one PASS/FAIL line per
// criterion, enforcing the per-criterion runtime caps. Exit 0 iff all pass.

#include <cstdio>
#include <cstdlib>

#include "padiq/paper_checks.hpp"

int main() {
  int threads = 4;
  if (const char* env = std::getenv("PADIQ_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) threads = n;
  }
  const double caps[12] = {1, 1, 5, 10, 30, 60, 60, 60, 120, 600, 600, 30};
  size_t i = 0;
  bool all = true;
  padiq::run_acceptance_checks(threads, [&](const padiq::CheckResult& r) {
    bool in_time = i < 12 && r.seconds < caps[i];
    bool ok = r.pass && in_time;
    std::printf("%s %s [%s] (%.2f s%s)\n", ok ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str(), r.seconds,
                in_time ? "" : ", over the runtime cap");
    std::fflush(stdout);
    all = all && ok;
    ++i;
  });
  return all ? 0 : 1;
}
