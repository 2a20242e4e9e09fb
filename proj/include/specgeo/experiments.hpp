#pragma once

#include <cstdint>
#include <vector>

#include "specgeo/comparison.hpp"
#include "specgeo/discrete.hpp"

namespace specgeo {

struct ComparisonSuiteConfig {
  GridTorus grid;
  int instances = 100;
  std::uint64_t seed = 1;
  bool constant_ratio = false;
  double potential_low = -2.0;
  double potential_high = 6.0;
  double ratio_bound = 3.0;  // constant branch: c uniform in [-ratio_bound, ratio_bound]
  double tolerance = 1e-8;
};

struct ComparisonInstance {
  std::uint64_t seed = 0;
  ComparisonReport report;
  // nonconstant: lhs_count - rhs_count. constant: max |λ^_k - (λ_k - c)|.
  double margin = 0.0;
  bool passed = false;
};

struct ComparisonSuiteResult {
  std::vector<ComparisonInstance> instances;
  int passed = 0;
  double worst_margin = 0.0;
  bool all_passed() const { return passed == static_cast<int>(instances.size()); }
};

/// Seeded random (q, p) pencils on the grid, instance i drawn from
/// std::mt19937_64(seed + i). L = Δ_h, L^ = Δ_h + q, threshold a = median
/// eigenvalue of L. Instances are independent and reported in seed order.
ComparisonSuiteResult run_comparison_suite(const ComparisonSuiteConfig& config);

}  // namespace specgeo
