#pragma once

// Invariant suite behind `dtlab verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace dt {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;  // worst measured deviation (or count of failures)
  std::string detail;
};

struct VerifyOptions {
  int n = 4;
  std::uint64_t seed = 1;
  int samples = 50;
  double quantum = 1e-6;
};

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt);

}  // namespace dt
