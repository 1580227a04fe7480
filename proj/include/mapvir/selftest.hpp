#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mapvir {

struct SuiteResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

/// Names accepted by run_selftest, in run order.
const std::vector<std::string>& selftest_suites();

/// Randomized invariant suites (Jacobi, antisymmetry, straightening,
/// algebra axioms, idempotents, intermediate series, Verma action). The same
/// seed gives the same cases. An empty `only` runs everything.
std::vector<SuiteResult> run_selftest(std::uint64_t seed, const std::vector<std::string>& only = {});

}  // namespace mapvir
