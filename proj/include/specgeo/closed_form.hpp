#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specgeo/curvature.hpp"
#include "specgeo/rational.hpp"
#include "specgeo/spectrum.hpp"

namespace specgeo {

/// Round sphere S^dim(radius). `exact_rad2` is set when the squared radius is
/// a known rational; the exact spectrum path is used only then.
struct RoundSphereFactor {
  int dim = 1;
  double rad2 = 1.0;
  std::optional<Rational> exact_rad2;

  static RoundSphereFactor exact(int dim, Rational rad2);
  static RoundSphereFactor inexact(int dim, double rad2);

  double radius() const;
};

/// A hypersurface of the unit (n+1)-sphere that is a product of at most two
/// round spheres. One factor of radius 1 is a great sphere; two factors with
/// r1^2 + r2^2 = 1 form a (generalized) Clifford torus.
class ProductSphereModel {
 public:
  static ProductSphereModel great_sphere(int n);
  /// Minimal Clifford hypersurface S^m(sqrt(m/n)) x S^{n-m}(sqrt((n-m)/n)).
  static ProductSphereModel clifford(int m, int n);
  /// S^m(r1) x S^{n-m}(r2) with S_{r+1} = 0, radii from the bisection solver.
  /// r = 0 yields the exact minimal Clifford model.
  static ProductSphereModel generalized_clifford(int m, int n, int r);

  /// Validates factor count, dimensions, radii and sum of squared radii.
  explicit ProductSphereModel(std::vector<RoundSphereFactor> factors);

  const std::vector<RoundSphereFactor>& factors() const { return factors_; }
  int dimension() const { return dimension_; }
  bool is_full() const { return factors_.size() == 2; }
  bool is_exact() const;

  /// Orientation-normalized principal curvatures; group i belongs to factor i
  /// (a great sphere has a single zero group).
  const PrincipalCurvatureProfile& profile() const { return profile_; }

  /// S = |A|^2.
  double squared_norm() const;
  std::optional<Rational> exact_squared_norm() const;

  bool is_minimal() const;

  std::string describe() const;

 private:
  std::vector<RoundSphereFactor> factors_;
  int dimension_ = 0;
  PrincipalCurvatureProfile profile_;
};

/// Laplace spectrum of S^d(radius): k(k+d-1)/radius^2 for all k with value
/// below cutoff, multiplicity 1 for k = 0, 2 for d = 1, and
/// C(d+k,k) - C(d+k-2,k-2) otherwise.
Spectrum sphere_spectrum(int d, double radius, double cutoff);
ExactSpectrum exact_sphere_spectrum(int d, const Rational& rad2, double cutoff);

/// Multiplicity of the k-th eigenvalue of the round S^d.
int sphere_multiplicity(int d, int k);

/// Spectrum of the flat torus R^2 / (period_x Z x period_y Z).
Spectrum flat_torus_spectrum(double period_x, double period_y, double cutoff);

Spectrum laplace_spectrum(const ProductSphereModel& model, double cutoff);
ExactSpectrum exact_laplace_spectrum(const ProductSphereModel& model, double cutoff);

/// Spectrum of J = Δ + n + S (convention Ju = -λu), complete below `cutoff`
/// in J-eigenvalues. Throws InvalidArgument for non-minimal models.
Spectrum jacobi_spectrum(const ProductSphereModel& model, double cutoff);

/// Number of negative eigenvalues of J, i.e. N^Δ_{<n+S}.
int morse_index(const ProductSphereModel& model);

/// Smallest nonzero Laplace eigenvalue.
double lambda1(const ProductSphereModel& model);

struct CoordinateEigenfunctionReport {
  int n = 0;
  double s_value = 0.0;
  int n_multiplicity = 0;  // multiplicity of eigenvalue n (coordinates x^i)
  int s_multiplicity = 0;  // multiplicity of eigenvalue S (normal components ν^i)
  bool full = false;
  bool passed = false;
  std::optional<double> offending;
  std::string detail;
};

/// Checks Δx^i = -n x^i and Δν^i = -S ν^i at the level of multiplicities:
/// for a full model both eigenvalues must carry multiplicity >= n+2.
CoordinateEigenfunctionReport verify_coordinate_eigenfunctions(const ProductSphereModel& model);

/// Counting tolerance for closed-form spectra: 0 on the exact path, otherwise
/// 1e-9 relative to the threshold.
double closed_form_count_tolerance(const ProductSphereModel& model, int r, double threshold);

/// Spectrum of L_r u = div(T_r ∇u) (convention L_r u = -λu). On a product
/// model T_r is t_r(i) on the i-th factor, so L_r = Σ t_r(i) Δ_i.
/// Throws InvalidArgument when L_r is not elliptic.
Spectrum lr_spectrum(const ProductSphereModel& model, int r, double cutoff);

struct NewtonEigenfunctionReport {
  int n = 0;
  int r = 0;
  double x_eigenvalue = 0.0;   // (n-r) S_r
  double nu_eigenvalue = 0.0;  // -(r+2) S_{r+2}
  int x_multiplicity = 0;
  int nu_multiplicity = 0;
  bool full = false;
  bool passed = false;
  std::optional<double> offending;
  std::string detail;
};

/// Checks L_r x^i = -(n-r) S_r x^i and L_r ν^i = (r+2) S_{r+2} ν^i at the
/// level of multiplicities in lr_spectrum.
NewtonEigenfunctionReport verify_lemma44(const ProductSphereModel& model, int r);

/// (n-r) S_r - (r+2) S_{r+2}: the constant zeroth-order term of J_r.
double jr_potential(const ProductSphereModel& model, int r);

/// Number of negative eigenvalues of J_r = L_r + (n-r)S_r - (r+2)S_{r+2}.
int r_index(const ProductSphereModel& model, int r);

}  // namespace specgeo
