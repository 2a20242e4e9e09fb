#include "specgeo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "specgeo/errors.hpp"

namespace specgeo {

namespace {

std::vector<double> values_of(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

double median_value(const Eigen::VectorXd& sorted) { return sorted[sorted.size() / 2]; }

ComparisonInstance nonconstant_instance(const ComparisonSuiteConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& grid = config.grid;
  const auto q = random_trig_field(grid, rng, config.potential_low, config.potential_high);
  const auto p = random_weight(grid, rng);
  const auto lap = build_laplacian(grid);
  const auto spec_l = solve_weighted(lap, p);
  const auto spec_lhat = solve_weighted(add_potential(lap, q), p);
  const auto ratio = inf_ratio(values_of(q), values_of(p.values()));

  ComparisonInstance out;
  out.seed = seed;
  const double a = spec_l.entries()[spec_l.size() / 2].value;
  out.report = check_comparison(spec_l, spec_lhat, ratio, a, config.tolerance);
  out.margin = out.report.lhs_count - out.report.rhs_count;
  out.passed = out.report.verdict;
  return out;
}

ComparisonInstance constant_instance(const ComparisonSuiteConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& grid = config.grid;
  const auto p = random_weight(grid, rng);
  std::uniform_real_distribution<double> cdist(-config.ratio_bound, config.ratio_bound);
  const double c = cdist(rng);
  const Eigen::VectorXd q = c * p.values();
  const auto lap = build_laplacian(grid);
  const auto base = solve_weighted_pairs(lap, p, false).eigenvalues;
  const auto moved = solve_weighted_pairs(add_potential(lap, q), p, false).eigenvalues;

  const auto ratio = inf_ratio(values_of(q), values_of(p.values()));
  if (!ratio.constant) {
    throw InvalidArgument("q = c p did not register as a constant ratio");
  }
  ComparisonInstance out;
  out.seed = seed;
  const double a = median_value(base);
  const auto spec_l = Spectrum::from_values(values_of(base), kInfinity);
  const auto spec_lhat = Spectrum::from_values(values_of(moved), kInfinity);
  out.report = check_comparison(spec_l, spec_lhat, ratio, a, config.tolerance);
  out.margin = (moved - (base.array() - c).matrix()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, base.cwiseAbs().maxCoeff());
  out.passed = out.report.verdict && out.margin <= config.tolerance * scale;
  return out;
}

}  // namespace

ComparisonSuiteResult run_comparison_suite(const ComparisonSuiteConfig& config) {
  if (config.instances < 1) {
    throw InvalidArgument("comparison suite needs at least one instance");
  }
  if (config.grid.node_count() > kDenseSolverCap) {
    throw InvalidArgument("grid exceeds the dense solver cap");
  }
  ComparisonSuiteResult result;
  for (int i = 0; i < config.instances; ++i) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
    auto instance = config.constant_ratio ? constant_instance(config, seed)
                                          : nonconstant_instance(config, seed);
    if (instance.passed) {
      ++result.passed;
    }
    if (result.instances.empty()) {
      result.worst_margin = instance.margin;
    } else if (config.constant_ratio) {
      result.worst_margin = std::max(result.worst_margin, instance.margin);
    } else {
      result.worst_margin = std::min(result.worst_margin, instance.margin);
    }
    result.instances.push_back(std::move(instance));
  }
  return result;
}

}  // namespace specgeo
