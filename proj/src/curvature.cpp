#include "specgeo/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specgeo/errors.hpp"

namespace specgeo {

namespace {

void check_order(const PrincipalCurvatureProfile& profile, int r) {
  if (r < 0 || r > profile.dimension() - 1) {
    std::ostringstream msg;
    msg << "order r = " << r << " outside [0, " << profile.dimension() - 1 << "]";
    throw InvalidArgument(msg.str());
  }
}

double curvature_scale(const PrincipalCurvatureProfile& profile) {
  return std::max(1.0, profile.max_abs_curvature());
}

}  // namespace

PrincipalCurvatureProfile::PrincipalCurvatureProfile(std::vector<CurvatureGroup> groups)
    : groups_(std::move(groups)) {
  if (groups_.empty()) {
    throw InvalidArgument("curvature profile has no groups");
  }
  for (const auto& g : groups_) {
    if (g.multiplicity < 1) {
      throw InvalidArgument("curvature multiplicity must be >= 1");
    }
    if (!std::isfinite(g.k)) {
      throw InvalidArgument("curvature value is not finite");
    }
    dimension_ += g.multiplicity;
  }
}

double PrincipalCurvatureProfile::max_abs_curvature() const {
  double m = 0.0;
  for (const auto& g : groups_) {
    m = std::max(m, std::abs(g.k));
  }
  return m;
}

double PrincipalCurvatureProfile::squared_norm() const {
  double s = 0.0;
  for (const auto& g : groups_) {
    s += g.multiplicity * g.k * g.k;
  }
  return s;
}

PrincipalCurvatureProfile PrincipalCurvatureProfile::flipped() const {
  std::vector<CurvatureGroup> out = groups_;
  for (auto& g : out) {
    g.k = -g.k;
  }
  return PrincipalCurvatureProfile(std::move(out));
}

double binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return std::round(c);
}

SymmetricFunctionTable elementary_symmetric(const PrincipalCurvatureProfile& profile) {
  const int n = profile.dimension();
  SymmetricFunctionTable table;
  std::vector<double>& S = table.S;
  S.assign(n + 1, 0.0);
  S[0] = 1.0;
  int degree = 0;
  for (const auto& g : profile.groups()) {
    // (1 + k t)^m = sum_j C(m, j) k^j t^j
    std::vector<double> factor(g.multiplicity + 1);
    double power = 1.0;
    for (int j = 0; j <= g.multiplicity; ++j) {
      factor[j] = binomial(g.multiplicity, j) * power;
      power *= g.k;
    }
    std::vector<double> product(n + 1, 0.0);
    for (int a = 0; a <= degree; ++a) {
      for (int j = 0; j <= g.multiplicity; ++j) {
        product[a + j] += S[a] * factor[j];
      }
    }
    S = std::move(product);
    degree += g.multiplicity;
  }

  table.H.resize(n + 1);
  for (int r = 0; r <= n; ++r) {
    table.H[r] = S[r] / binomial(n, r);
  }

  table.F.assign(n, 0.0);
  table.F[0] = 1.0;
  if (n >= 2) {
    table.F[1] = S[1];
  }
  for (int r = 2; r <= n - 1; ++r) {
    table.F[r] = S[r] + static_cast<double>(n - r + 1) / (r - 1) * table.F[r - 2];
  }
  return table;
}

double symmetric_function(const SymmetricFunctionTable& table, int r) {
  if (r < 0) {
    throw InvalidArgument("symmetric function index must be nonnegative");
  }
  return r < static_cast<int>(table.S.size()) ? table.S[r] : 0.0;
}

PrincipalCurvatureProfile normalize_orientation(const PrincipalCurvatureProfile& profile) {
  const auto table = elementary_symmetric(profile);
  const double scale = curvature_scale(profile);
  for (int r = 1; r <= profile.dimension(); r += 2) {
    const double s = table.S[r];
    if (std::abs(s) <= 1e-12 * std::pow(scale, r)) {
      continue;
    }
    return s < 0.0 ? profile.flipped() : profile;
  }
  return profile;
}

NewtonEigenvalues newton_eigenvalues(const PrincipalCurvatureProfile& profile, int r) {
  check_order(profile, r);
  const auto table = elementary_symmetric(profile);
  NewtonEigenvalues out;
  out.r = r;
  out.values.reserve(profile.groups().size());
  for (const auto& g : profile.groups()) {
    double t = 1.0;
    for (int j = 1; j <= r; ++j) {
      t = table.S[j] - g.k * t;
    }
    out.values.push_back(t);
  }
  return out;
}

EllipticityCheck check_elliptic(const PrincipalCurvatureProfile& profile, int r) {
  const auto t = newton_eigenvalues(profile, r);
  const double margin = *std::min_element(t.values.begin(), t.values.end());
  return {margin > 0.0, margin};
}

bool check_r_minimal(const PrincipalCurvatureProfile& profile, int r, double tol) {
  check_order(profile, r);
  const auto table = elementary_symmetric(profile);
  const double scale = std::pow(curvature_scale(profile), r + 1);
  return std::abs(table.S[r + 1]) <= tol * scale;
}

bool caminha_check(const PrincipalCurvatureProfile& profile, int r, double tol) {
  if (!check_r_minimal(profile, r, tol)) {
    throw InvalidArgument("caminha_check requires an r-minimal profile");
  }
  const auto table = elementary_symmetric(profile);
  const double h_r = table.H[r];
  const double h_r2 = r + 2 <= profile.dimension() ? table.H[r + 2] : 0.0;
  const double scale = std::pow(curvature_scale(profile), 2 * (r + 1));
  return h_r * h_r2 <= tol * scale;
}

PrincipalCurvatureProfile generalized_clifford_profile(int m, int n, double r1) {
  if (m < 1 || m > n - 1) {
    throw InvalidArgument("generalized Clifford torus needs 1 <= m <= n-1");
  }
  if (!(r1 > 0.0 && r1 < 1.0)) {
    throw InvalidArgument("radius r1 must lie in (0, 1)");
  }
  const double r2 = std::sqrt(1.0 - r1 * r1);
  return PrincipalCurvatureProfile({{r2 / r1, m}, {-r1 / r2, n - m}});
}

namespace {

constexpr double kBracketMargin = 1e-6;
constexpr double kRootTolerance = 1e-12;
constexpr int kMaxBisections = 200;
constexpr int kScanIntervals = 4000;

double clifford_residual(int m, int n, int r, double r1) {
  const auto table = elementary_symmetric(generalized_clifford_profile(m, n, r1));
  return table.S[r + 1];
}

CliffordRadii bisect(int m, int n, int r, double lo, double hi, double f_lo) {
  double mid = 0.5 * (lo + hi);
  double f_mid = clifford_residual(m, n, r, mid);
  for (int it = 0; it < kMaxBisections && std::abs(f_mid) > kRootTolerance; ++it) {
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) {
      break;
    }
    mid = next;
    f_mid = clifford_residual(m, n, r, mid);
  }
  return {mid, std::sqrt(1.0 - mid * mid), f_mid};
}

}  // namespace

std::vector<CliffordRadii> generalized_clifford_roots(int m, int n, int r) {
  if (m < 1 || m > n - 1) {
    throw InvalidArgument("generalized Clifford torus needs 1 <= m <= n-1");
  }
  if (r < 0 || r > n - 1) {
    throw InvalidArgument("order r must satisfy 0 <= r <= n-1");
  }
  std::vector<CliffordRadii> roots;
  const double lo = kBracketMargin;
  const double hi = 1.0 - kBracketMargin;
  const double step = (hi - lo) / kScanIntervals;
  double x_prev = lo;
  double f_prev = clifford_residual(m, n, r, x_prev);
  for (int i = 1; i <= kScanIntervals; ++i) {
    const double x = (i == kScanIntervals) ? hi : lo + i * step;
    const double f = clifford_residual(m, n, r, x);
    if (f_prev == 0.0) {
      roots.push_back({x_prev, std::sqrt(1.0 - x_prev * x_prev), 0.0});
    } else if ((f_prev < 0.0) != (f < 0.0) && f != 0.0) {
      roots.push_back(bisect(m, n, r, x_prev, x, f_prev));
    }
    x_prev = x;
    f_prev = f;
  }
  if (f_prev == 0.0) {
    roots.push_back({x_prev, std::sqrt(1.0 - x_prev * x_prev), 0.0});
  }
  return roots;
}

CliffordRadii solve_generalized_clifford(int m, int n, int r) {
  if (m < 1 || m > n - 1) {
    throw InvalidArgument("generalized Clifford torus needs 1 <= m <= n-1");
  }
  if (r < 0 || r > n - 1) {
    throw InvalidArgument("order r must satisfy 0 <= r <= n-1");
  }
  if (r == 0) {
    const double r1 = std::sqrt(static_cast<double>(m) / n);
    const double r2 = std::sqrt(static_cast<double>(n - m) / n);
    return {r1, r2, clifford_residual(m, n, 0, r1)};
  }
  const auto roots = generalized_clifford_roots(m, n, r);
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "no r-minimal radius for (m, n, r) = (" << m << ", " << n << ", " << r << ")";
    throw NoSolution(msg.str());
  }
  for (const auto& root : roots) {
    const auto profile = normalize_orientation(generalized_clifford_profile(m, n, root.r1));
    if (check_elliptic(profile, r).elliptic) {
      return root;
    }
  }
  return roots.front();
}

}  // namespace specgeo
