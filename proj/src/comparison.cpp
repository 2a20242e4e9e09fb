#include "specgeo/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specgeo/errors.hpp"

namespace specgeo {

RatioBounds inf_ratio(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size() || q.empty()) {
    throw InvalidArgument("q and p must be nonempty fields of the same size");
  }
  double lo = kInfinity;
  double hi = -kInfinity;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(p[i] > 0.0)) {
      throw InvalidArgument("weight p must be strictly positive");
    }
    const double ratio = q[i] / p[i];
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  return {lo, hi, hi - lo <= kConstantRatioTolerance * scale};
}

RatioBounds inf_ratio(double q, double p) {
  if (!(p > 0.0)) {
    throw InvalidArgument("weight p must be strictly positive");
  }
  return {q / p, q / p, true};
}

ComparisonReport check_comparison(const Spectrum& spec_l, const Spectrum& spec_lhat,
                                  const RatioBounds& ratio, double a, double eps) {
  ComparisonReport report;
  report.a = a;
  report.a0 = ratio.infimum;
  if (!ratio.constant) {
    report.branch = ComparisonBranch::nonconstant;
    report.lhs_count = count_below(spec_lhat, a - report.a0, eps);
    report.rhs_count = count_at_or_below(spec_l, a, eps);
    report.verdict = report.lhs_count >= report.rhs_count;
    return report;
  }
  report.branch = ComparisonBranch::constant;
  const double c = report.a0;
  report.lhs_count = count_at_or_below(spec_lhat, a - c, eps);
  report.rhs_count = count_at_or_below(spec_l, a, eps);
  report.lhs_strict_count = count_below(spec_lhat, a - c, eps);
  report.rhs_strict_count = count_below(spec_l, a, eps);
  report.verdict = report.lhs_count == report.rhs_count &&
                   *report.lhs_strict_count == *report.rhs_strict_count;
  return report;
}

IndexBoundReport theorem12_bound(const Spectrum& laplace, int n, double eps) {
  if (n < 1) {
    throw InvalidArgument("hypersurface dimension must be >= 1");
  }
  IndexBoundReport report;
  report.n = n;
  report.bound = count_at_or_below(laplace, n, eps);
  report.multiplicity_at_n = count_equal(laplace, n, eps);
  for (const auto& e : laplace.entries()) {
    if (e.value <= n + eps) {
      report.contributing.push_back(e);
    }
    if (!report.lambda1 && e.value > eps && e.value <= n + eps) {
      report.lambda1 = e.value;
    }
  }
  report.lambda1_below_n = report.lambda1 && *report.lambda1 < n - eps;
  report.multiplicity_at_n_at_least_n_plus_3 = report.multiplicity_at_n >= n + 3;
  report.fullness_witnessed = report.multiplicity_at_n >= n + 2;
  return report;
}

std::optional<int> corollary13(const Spectrum& laplace, int n, double eps) {
  const auto report = theorem12_bound(laplace, n, eps);
  if (report.lambda1_below_n || report.multiplicity_at_n_at_least_n_plus_3) {
    return report.bound;
  }
  return std::nullopt;
}

CertificateReport certify_constant_s(const Spectrum& laplace, int n, double s, double eps) {
  if (!(s > 0.0)) {
    throw InvalidArgument("a full minimal hypersurface has S > 0");
  }
  CertificateReport report;
  report.bound = count_below(laplace, n + s, eps);
  if (s <= n + eps) {
    report.regime = Regime::rigidity;
    report.note = "rigidity regime (Clifford, index n+3)";
    return report;
  }
  const int floor = n + 2;
  const int at_n = count_equal(laplace, n, eps);
  const int at_s = count_equal(laplace, s, eps);
  report.floors.push_back({"multiplicity of n", static_cast<double>(n), at_n, floor, at_n >= floor});
  report.floors.push_back({"multiplicity of S", s, at_s, floor, at_s >= floor});
  const bool met = std::all_of(report.floors.begin(), report.floors.end(),
                               [](const FloorCheck& f) { return f.met; });
  if (met) {
    report.regime = Regime::strict;
    report.note = "S > n: bound >= 1 + (n+2) + (n+2) = 2n+5";
  } else {
    report.regime = Regime::hypothesis_failure;
    report.note = "S > n but the coordinate eigenvalue floors are unmet (input not full)";
  }
  return report;
}

CertificateReport certify_s_big(const Spectrum& jacobi, int n, double eps) {
  if (!(jacobi.cutoff() > 0.0)) {
    throw UncertifiedCount("Jacobi spectrum must be certified below 0");
  }
  CertificateReport report;
  const int below = count_below(jacobi, -n, eps);
  const int at = count_equal(jacobi, -n, eps);
  report.floors.push_back({"N^J_{<-n}", static_cast<double>(-n), below, n + 3, below >= n + 3});
  report.floors.push_back({"N^J_{=-n}", static_cast<double>(-n), at, n + 2, at >= n + 2});
  if (report.floors[0].met && report.floors[1].met) {
    report.bound = below + at;
    report.regime = Regime::strict;
    report.note = "S >= n: bound N^J_{<-n} + N^J_{=-n} >= (n+3) + (n+2) = 2n+5";
  } else {
    report.regime = Regime::hypothesis_failure;
    report.note = "floors unmet";
  }
  return report;
}

CertificateReport certify_rmin(const Spectrum& lr, int n, int r, double s_r, double s_r2,
                               bool weighted, double eps) {
  if (!(s_r > 0.0)) {
    throw InvalidArgument("r-index certificate needs S_r > 0");
  }
  if (r < 0 || r > n - 1) {
    throw InvalidArgument("order r must satisfy 0 <= r <= n-1");
  }
  const double unit = weighted ? s_r : 1.0;
  const double x_eigenvalue = (n - r) * s_r / unit;
  const double nu_eigenvalue = -(r + 2) * s_r2 / unit;
  const double threshold = x_eigenvalue + nu_eigenvalue;

  CertificateReport report;
  report.bound = count_below(lr, threshold, eps);

  const double ratio = -(r + 2) * s_r2 / s_r;
  if (ratio <= (n - r) + 1e-9 * std::max(1.0, static_cast<double>(n - r))) {
    report.regime = Regime::rigidity;
    report.note = "rigidity regime (generalized Clifford, r-index n+3)";
    return report;
  }
  const int floor = n + 2;
  const int at_x = count_equal(lr, x_eigenvalue, eps);
  const int at_nu = count_equal(lr, nu_eigenvalue, eps);
  report.floors.push_back({"multiplicity of (n-r)S_r", x_eigenvalue, at_x, floor, at_x >= floor});
  report.floors.push_back(
      {"multiplicity of -(r+2)S_{r+2}", nu_eigenvalue, at_nu, floor, at_nu >= floor});
  if (report.floors[0].met && report.floors[1].met) {
    report.regime = Regime::strict;
    report.note = "-(r+2)S_{r+2}/S_r > n-r: bound >= 1 + (n+2) + (n+2) = 2n+5";
  } else {
    report.regime = Regime::hypothesis_failure;
    report.note = "coordinate eigenvalue floors unmet";
  }
  return report;
}

const char* to_string(ComparisonBranch branch) {
  return branch == ComparisonBranch::constant ? "constant" : "nonconstant";
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::rigidity:
      return "rigidity";
    case Regime::strict:
      return "strict";
    case Regime::hypothesis_failure:
      return "hypothesis_failure";
  }
  return "unknown";
}

}  // namespace specgeo
