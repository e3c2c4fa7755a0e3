#pragma once

#include <functional>
#include <string>
#include <vector>

namespace padiq {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Executable fixture corpus: one entry per acceptance criterion. Shared by
/// the CLI verification subcommand and the acceptance test binary. threads
/// feeds the value scanner; results are independent of it. progress, if set,
/// is invoked with each result as soon as its fixture finishes.
std::vector<CheckResult> run_acceptance_checks(
    int threads = 1,
    const std::function<void(const CheckResult&)>& progress = nullptr);

}  // namespace padiq
