#pragma once

#include <string>
#include <vector>

namespace molt::harness {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Fast self-checks of the solver's structural properties (seconds).
std::vector<CheckResult> run_checks();

}  // namespace molt::harness
