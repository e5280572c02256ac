#pragma once

#include <string>
#include <vector>

namespace quadrl {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Self-contained invariant and gradient checks runnable from the CLI:
// dynamics fixed points, actuator exactness, mixer round trip, finite
// difference verification of every differentiable op, reward/GAE oracles,
// and metric oracles. Runs in well under a minute.
std::vector<CheckResult> run_verify_suite();

// Render results, one line each; returns true when everything passed.
bool print_results(const std::vector<CheckResult>& results);

}  // namespace quadrl
