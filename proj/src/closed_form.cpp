#include "specgeo/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specgeo/errors.hpp"

namespace specgeo {

namespace {

constexpr double kRadiusSumTolerance = 1e-12;

PrincipalCurvatureProfile profile_of(const std::vector<RoundSphereFactor>& factors) {
  if (factors.size() == 1) {
    return PrincipalCurvatureProfile({{0.0, factors[0].dim}});
  }
  const double rho = std::sqrt(factors[1].rad2 / factors[0].rad2);
  return normalize_orientation(
      PrincipalCurvatureProfile({{rho, factors[0].dim}, {-1.0 / rho, factors[1].dim}}));
}

const std::vector<RoundSphereFactor>& validated(const std::vector<RoundSphereFactor>& factors) {
  if (factors.empty() || factors.size() > 2) {
    throw InvalidArgument("product-sphere model needs one or two factors");
  }
  for (const auto& f : factors) {
    if (f.dim < 1) {
      throw InvalidArgument("sphere factor dimension must be >= 1");
    }
    if (!(f.rad2 > 0.0) || !std::isfinite(f.rad2)) {
      throw InvalidArgument("sphere factor radius must be positive");
    }
    if (f.exact_rad2 && *f.exact_rad2 <= Rational(0)) {
      throw InvalidArgument("sphere factor radius must be positive");
    }
  }
  if (factors.size() == 1) {
    const auto& f = factors[0];
    const bool unit = f.exact_rad2 ? *f.exact_rad2 == Rational(1) : std::abs(f.rad2 - 1.0) <= kRadiusSumTolerance;
    if (!unit) {
      throw InvalidArgument("a single factor must be the great sphere (radius 1)");
    }
  } else {
    const auto& a = factors[0];
    const auto& b = factors[1];
    bool unit = false;
    if (a.exact_rad2 && b.exact_rad2) {
      unit = *a.exact_rad2 + *b.exact_rad2 == Rational(1);
    } else {
      unit = std::abs(a.rad2 + b.rad2 - 1.0) <= kRadiusSumTolerance;
    }
    if (!unit) {
      throw InvalidArgument("squared radii of the two factors must sum to 1");
    }
  }
  return factors;
}

std::string format_rad2(const RoundSphereFactor& f) {
  std::ostringstream out;
  if (f.exact_rad2 && *f.exact_rad2 == Rational(1)) {
    out << 1;
  } else if (f.exact_rad2) {
    out << "sqrt(" << to_string(*f.exact_rad2) << ")";
  } else {
    out.precision(12);
    out << std::sqrt(f.rad2);
  }
  return out.str();
}

ExactSpectrum exact_sphere_factor(const RoundSphereFactor& f, double cutoff) {
  return exact_sphere_spectrum(f.dim, *f.exact_rad2, cutoff);
}

}  // namespace

RoundSphereFactor RoundSphereFactor::exact(int dim, Rational rad2) {
  return {dim, to_double(rad2), rad2};
}

RoundSphereFactor RoundSphereFactor::inexact(int dim, double rad2) {
  return {dim, rad2, std::nullopt};
}

double RoundSphereFactor::radius() const { return std::sqrt(rad2); }

ProductSphereModel::ProductSphereModel(std::vector<RoundSphereFactor> factors)
    : factors_(validated(factors)), profile_(profile_of(factors_)) {
  for (const auto& f : factors_) {
    dimension_ += f.dim;
  }
}

ProductSphereModel ProductSphereModel::great_sphere(int n) {
  if (n < 1) {
    throw InvalidArgument("sphere dimension must be >= 1");
  }
  return ProductSphereModel({RoundSphereFactor::exact(n, Rational(1))});
}

ProductSphereModel ProductSphereModel::clifford(int m, int n) {
  if (m < 1 || m > n - 1) {
    throw InvalidArgument("Clifford hypersurface needs 1 <= m <= n-1");
  }
  return ProductSphereModel({RoundSphereFactor::exact(m, Rational(m, n)),
                             RoundSphereFactor::exact(n - m, Rational(n - m, n))});
}

ProductSphereModel ProductSphereModel::generalized_clifford(int m, int n, int r) {
  if (r == 0) {
    return clifford(m, n);
  }
  const auto radii = solve_generalized_clifford(m, n, r);
  const double rad2_1 = radii.r1 * radii.r1;
  return ProductSphereModel({RoundSphereFactor::inexact(m, rad2_1),
                             RoundSphereFactor::inexact(n - m, 1.0 - rad2_1)});
}

bool ProductSphereModel::is_exact() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const RoundSphereFactor& f) { return f.exact_rad2.has_value(); });
}

std::optional<Rational> ProductSphereModel::exact_squared_norm() const {
  if (!is_exact()) {
    return std::nullopt;
  }
  if (factors_.size() == 1) {
    return Rational(0);
  }
  const Rational& a = *factors_[0].exact_rad2;
  const Rational& b = *factors_[1].exact_rad2;
  return Rational(factors_[0].dim) * b / a + Rational(factors_[1].dim) * a / b;
}

double ProductSphereModel::squared_norm() const {
  if (auto exact = exact_squared_norm()) {
    return to_double(*exact);
  }
  return profile_.squared_norm();
}

bool ProductSphereModel::is_minimal() const {
  if (factors_.size() == 1) {
    return true;
  }
  if (is_exact()) {
    // S_1 = (d1 r2^2 - d2 r1^2) / (r1 r2)
    return Rational(factors_[0].dim) * *factors_[1].exact_rad2 ==
           Rational(factors_[1].dim) * *factors_[0].exact_rad2;
  }
  return check_r_minimal(profile_, 0);
}

std::string ProductSphereModel::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0) {
      out << " x ";
    }
    out << "S^" << factors_[i].dim << "(" << format_rad2(factors_[i]) << ")";
  }
  return out.str();
}

int sphere_multiplicity(int d, int k) {
  if (k == 0) {
    return 1;
  }
  if (d == 1) {
    return 2;
  }
  return static_cast<int>(binomial(d + k, k) - binomial(d + k - 2, k - 2));
}

Spectrum sphere_spectrum(int d, double radius, double cutoff) {
  if (d < 1 || !(radius > 0.0)) {
    throw InvalidArgument("sphere needs dimension >= 1 and positive radius");
  }
  if (!std::isfinite(cutoff)) {
    throw InvalidArgument("sphere spectrum needs a finite cutoff");
  }
  const double rad2 = radius * radius;
  std::vector<SpectrumEntry> entries;
  for (int k = 0;; ++k) {
    const double value = static_cast<double>(k) * (k + d - 1) / rad2;
    if (!(value < cutoff)) {
      break;
    }
    entries.push_back({value, sphere_multiplicity(d, k)});
  }
  return Spectrum::merged(std::move(entries), cutoff);
}

ExactSpectrum exact_sphere_spectrum(int d, const Rational& rad2, double cutoff) {
  if (d < 1 || rad2 <= Rational(0)) {
    throw InvalidArgument("sphere needs dimension >= 1 and positive radius");
  }
  if (!std::isfinite(cutoff)) {
    throw InvalidArgument("sphere spectrum needs a finite cutoff");
  }
  ExactSpectrum out(cutoff);
  for (std::int64_t k = 0;; ++k) {
    const Rational value = Rational(k * (k + d - 1)) / rad2;
    if (!(to_double(value) < cutoff)) {
      break;
    }
    out.add(value, sphere_multiplicity(d, static_cast<int>(k)));
  }
  return out;
}

Spectrum flat_torus_spectrum(double period_x, double period_y, double cutoff) {
  const double two_pi = 2.0 * M_PI;
  return product_sum(sphere_spectrum(1, period_x / two_pi, cutoff),
                     sphere_spectrum(1, period_y / two_pi, cutoff), cutoff);
}

ExactSpectrum exact_laplace_spectrum(const ProductSphereModel& model, double cutoff) {
  if (!model.is_exact()) {
    throw InvalidArgument("exact spectrum requires rational squared radii");
  }
  const auto& factors = model.factors();
  if (factors.size() == 1) {
    return exact_sphere_factor(factors[0], cutoff);
  }
  // Factor spectra start at 0, so each factor only needs the product cutoff.
  return product_sum(exact_sphere_factor(factors[0], cutoff),
                     exact_sphere_factor(factors[1], cutoff), cutoff);
}

Spectrum laplace_spectrum(const ProductSphereModel& model, double cutoff) {
  if (model.is_exact()) {
    return exact_laplace_spectrum(model, cutoff).to_spectrum();
  }
  const auto& factors = model.factors();
  if (factors.size() == 1) {
    return sphere_spectrum(factors[0].dim, factors[0].radius(), cutoff);
  }
  return product_sum(sphere_spectrum(factors[0].dim, factors[0].radius(), cutoff),
                     sphere_spectrum(factors[1].dim, factors[1].radius(), cutoff), cutoff);
}

Spectrum jacobi_spectrum(const ProductSphereModel& model, double cutoff) {
  if (!model.is_minimal()) {
    throw InvalidArgument("Jacobi operator Δ + n + S needs a minimal model");
  }
  const int n = model.dimension();
  if (auto s = model.exact_squared_norm()) {
    const Rational c = Rational(n) + *s;
    const auto delta = exact_laplace_spectrum(model, cutoff + to_double(c) + 1.0);
    return shift(delta, c).to_spectrum().truncated(cutoff);
  }
  const double c = n + model.squared_norm();
  return shift(laplace_spectrum(model, cutoff + c + 1.0), c).truncated(cutoff);
}

double closed_form_count_tolerance(const ProductSphereModel& model, int r, double threshold) {
  if (model.is_exact() && r == 0) {
    return 0.0;
  }
  return 1e-9 * std::max(1.0, std::abs(threshold));
}

int morse_index(const ProductSphereModel& model) {
  const auto j = jacobi_spectrum(model, 1.0);
  return count_below(j, 0.0, closed_form_count_tolerance(model, 0, 0.0));
}

double lambda1(const ProductSphereModel& model) {
  double cutoff = 0.0;
  for (const auto& f : model.factors()) {
    cutoff = std::max(cutoff, f.dim / f.rad2);
  }
  const auto spectrum = laplace_spectrum(model, cutoff + 1.0);
  for (const auto& e : spectrum.entries()) {
    if (e.value > 0.0) {
      return e.value;
    }
  }
  throw InvalidArgument("no nonzero Laplace eigenvalue below the first sphere mode");
}

CoordinateEigenfunctionReport verify_coordinate_eigenfunctions(const ProductSphereModel& model) {
  if (!model.is_minimal()) {
    throw InvalidArgument("coordinate eigenfunction check needs a minimal model");
  }
  CoordinateEigenfunctionReport report;
  report.n = model.dimension();
  report.s_value = model.squared_norm();
  report.full = model.is_full();

  const double top = std::max<double>(report.n, report.s_value);
  const auto spectrum = laplace_spectrum(model, top + 1.0);
  report.n_multiplicity =
      count_equal(spectrum, report.n, closed_form_count_tolerance(model, 0, report.n));
  report.s_multiplicity =
      count_equal(spectrum, report.s_value, closed_form_count_tolerance(model, 0, report.s_value));

  std::ostringstream detail;
  if (report.full) {
    const int floor = report.n + 2;
    if (report.n_multiplicity < floor) {
      report.offending = report.n;
    } else if (report.s_multiplicity < floor) {
      report.offending = report.s_value;
    }
    report.passed = !report.offending;
    detail << "eigenvalue n = " << report.n << " has multiplicity " << report.n_multiplicity
           << ", eigenvalue S = " << report.s_value << " has multiplicity " << report.s_multiplicity
           << " (floor " << floor << ")";
  } else {
    // A great sphere spans a hyperplane: n+1 coordinates survive, ν is constant.
    if (report.n_multiplicity < report.n + 1) {
      report.offending = report.n;
    } else if (report.s_multiplicity < 1) {
      report.offending = report.s_value;
    }
    report.passed = !report.offending;
    detail << "not full: eigenvalue n = " << report.n << " has multiplicity "
           << report.n_multiplicity << ", normal is constant";
  }
  report.detail = detail.str();
  return report;
}

Spectrum lr_spectrum(const ProductSphereModel& model, int r, double cutoff) {
  if (r == 0) {
    return laplace_spectrum(model, cutoff);
  }
  const auto& profile = model.profile();
  const auto ellipticity = check_elliptic(profile, r);
  if (!ellipticity.elliptic) {
    std::ostringstream msg;
    msg << "L_" << r << " is not elliptic on " << model.describe() << " (min Newton eigenvalue "
        << ellipticity.margin << ")";
    throw InvalidArgument(msg.str());
  }
  const auto t = newton_eigenvalues(profile, r).values;
  const auto& factors = model.factors();
  auto factor_spectrum = [&](std::size_t i) {
    // Slightly enlarged so the scaled cutoff never falls below `cutoff`.
    const double local_cutoff = cutoff / t[i] * (1.0 + 1e-9) + 1e-12;
    return scale(sphere_spectrum(factors[i].dim, factors[i].radius(), local_cutoff), t[i]);
  };
  if (factors.size() == 1) {
    return factor_spectrum(0).truncated(cutoff);
  }
  return product_sum(factor_spectrum(0), factor_spectrum(1), cutoff);
}

namespace {

void require_r_minimal(const ProductSphereModel& model, int r) {
  if (r == 0 ? !model.is_minimal() : !check_r_minimal(model.profile(), r)) {
    std::ostringstream msg;
    msg << model.describe() << " is not " << r << "-minimal";
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

NewtonEigenfunctionReport verify_lemma44(const ProductSphereModel& model, int r) {
  require_r_minimal(model, r);
  const int n = model.dimension();
  const auto table = elementary_symmetric(model.profile());

  NewtonEigenfunctionReport report;
  report.n = n;
  report.r = r;
  report.full = model.is_full();
  if (r == 0 && model.is_exact()) {
    // S_0 = 1 and -2 S_2 = S on a minimal model; use the exact values.
    report.x_eigenvalue = n;
    report.nu_eigenvalue = model.squared_norm();
  } else {
    report.x_eigenvalue = (n - r) * table.S[r];
    report.nu_eigenvalue = -(r + 2) * symmetric_function(table, r + 2);
  }

  const double top = std::max(report.x_eigenvalue, report.nu_eigenvalue);
  const auto spectrum = lr_spectrum(model, r, top + 1.0 + 1e-6 * std::abs(top));
  report.x_multiplicity = count_equal(spectrum, report.x_eigenvalue,
                                      closed_form_count_tolerance(model, r, report.x_eigenvalue));
  report.nu_multiplicity = count_equal(
      spectrum, report.nu_eigenvalue, closed_form_count_tolerance(model, r, report.nu_eigenvalue));

  std::ostringstream detail;
  if (report.full) {
    const int floor = n + 2;
    if (report.x_multiplicity < floor) {
      report.offending = report.x_eigenvalue;
    } else if (report.nu_multiplicity < floor) {
      report.offending = report.nu_eigenvalue;
    }
    detail << "(n-r)S_r = " << report.x_eigenvalue << " has multiplicity "
           << report.x_multiplicity << ", -(r+2)S_{r+2} = " << report.nu_eigenvalue
           << " has multiplicity " << report.nu_multiplicity << " (floor " << floor << ")";
  } else {
    if (report.x_multiplicity < n + 1) {
      report.offending = report.x_eigenvalue;
    } else if (report.nu_multiplicity < 1) {
      report.offending = report.nu_eigenvalue;
    }
    detail << "not full: normal is constant, its eigenvalue " << report.nu_eigenvalue
           << " is carried by the constants";
  }
  report.passed = !report.offending;
  report.detail = detail.str();
  return report;
}

double jr_potential(const ProductSphereModel& model, int r) {
  const int n = model.dimension();
  if (r < 0 || r > n - 1) {
    throw InvalidArgument("order r must satisfy 0 <= r <= n-1");
  }
  if (r == 0 && model.is_exact() && model.is_minimal()) {
    return to_double(Rational(n) + *model.exact_squared_norm());
  }
  const auto table = elementary_symmetric(model.profile());
  return (n - r) * table.S[r] - (r + 2) * symmetric_function(table, r + 2);
}

int r_index(const ProductSphereModel& model, int r) {
  require_r_minimal(model, r);
  if (r == 0 && model.is_exact()) {
    return morse_index(model);
  }
  const double c = jr_potential(model, r);
  const auto spectrum = lr_spectrum(model, r, c + 1.0 + 1e-6 * std::abs(c));
  return count_below(spectrum, c, closed_form_count_tolerance(model, r, c));
}

}  // namespace specgeo
