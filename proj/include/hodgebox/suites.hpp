#pragma once

// Randomized exact property suites. Each is deterministic given its seed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hodgebox::suites {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;  // first failure, if any

  bool passed() const { return failures == 0 && cases > 0; }
};

SuiteResult af_suite(std::size_t per_n, std::uint64_t seed);
SuiteResult shephard_suite(std::size_t count, std::uint64_t seed);
/// Homothetic families: det M = 0 and the equality witness re-verifies.
SuiteResult shephard_equality_suite(std::size_t count, std::uint64_t seed);
SuiteResult fedotov_m2_suite(std::size_t count, std::uint64_t seed);
SuiteResult iterated_af_suite(std::size_t count, std::uint64_t seed);
SuiteResult hyperbolic_equivalence_suite(std::size_t count, std::uint64_t seed);
SuiteResult oracle_equivalence_suite(std::size_t count, std::uint64_t seed);
SuiteResult hvector_suite();
SuiteResult hr_positivity_suite(std::size_t count, std::uint64_t seed);
SuiteResult hr_mixed_volume_consistency_suite(std::size_t count, std::uint64_t seed);
SuiteResult power_roundtrip_suite(std::size_t count, std::uint64_t seed);
SuiteResult mixed_volume_invariants_suite(std::size_t count, std::uint64_t seed);
SuiteResult linear_algebra_invariants_suite(std::size_t count, std::uint64_t seed);

/// Every suite above at its full size.
std::vector<SuiteResult> run_all(std::uint64_t seed);

}  // namespace hodgebox::suites
