#pragma once
#include <string>
#include <vector>

namespace sllg {

struct VerifySuiteResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Release-gate suites: closed-form coefficients vs the projection oracle,
// the g=(1,0,0) analytic solution, two-chart consistency under a shared
// Wiener path, and norm preservation of the field solver.
std::vector<VerifySuiteResult> run_verification_suites(int oracle_states = 100,
                                                       std::uint64_t seed = 2024);

}  // namespace sllg
