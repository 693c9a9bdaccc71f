#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gaussep {

struct SuiteResult {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;  // inside the boundary band
  std::uint64_t failures = 0;
  double worst = 0.0;         // suite-specific worst-case residual
  std::string detail;         // first counterexample, if any

  bool passed() const { return failures == 0; }
};

struct SelftestOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
};

/// Property sweeps: uncertainty-form equivalence, PPT-form equivalence, local
/// invariance, two-mode squeezed closed forms, certificate soundness and the
/// Monte-Carlo moment check.
std::vector<SuiteResult> run_selftest(const SelftestOptions& opts);

}  // namespace gaussep
