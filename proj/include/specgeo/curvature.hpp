#pragma once

#include <vector>

namespace specgeo {

struct CurvatureGroup {
  double k = 0.0;
  int multiplicity = 0;

  friend bool operator==(const CurvatureGroup&, const CurvatureGroup&) = default;
};

/// Principal curvatures of a hypersurface with constant principal curvatures,
/// grouped by value. The shape operator is diagonal with these entries.
class PrincipalCurvatureProfile {
 public:
  /// Throws InvalidArgument on an empty group list or a multiplicity < 1.
  explicit PrincipalCurvatureProfile(std::vector<CurvatureGroup> groups);

  const std::vector<CurvatureGroup>& groups() const { return groups_; }
  int dimension() const { return dimension_; }

  double max_abs_curvature() const;

  /// |A|^2, the squared norm of the second fundamental form.
  double squared_norm() const;

  /// Same profile for the opposite unit normal (k -> -k).
  PrincipalCurvatureProfile flipped() const;

  friend bool operator==(const PrincipalCurvatureProfile&,
                         const PrincipalCurvatureProfile&) = default;

 private:
  std::vector<CurvatureGroup> groups_;
  int dimension_ = 0;
};

/// Fixes the unit normal: flips when S_1 < 0, or when S_1 = 0 and the first
/// nonvanishing odd S_r is negative. Values with |S_r| <= 1e-12 * scale^r
/// count as zero. Idempotent; group order is preserved.
PrincipalCurvatureProfile normalize_orientation(const PrincipalCurvatureProfile& profile);

struct SymmetricFunctionTable {
  std::vector<double> S;  // S_0..S_n
  std::vector<double> H;  // H_r = S_r / C(n, r)
  std::vector<double> F;  // F_0..F_{n-1}
};

/// S_r as coefficients of prod_i (1 + k_i t)^{m_i}, built group by group from
/// binomial expansions.
SymmetricFunctionTable elementary_symmetric(const PrincipalCurvatureProfile& profile);

/// S_r for any r >= 0; zero beyond the dimension.
double symmetric_function(const SymmetricFunctionTable& table, int r);

double binomial(int n, int k);

/// Eigenvalues of the Newton transformation T_r, one per curvature group:
/// t_0 = 1, t_r = S_r - k * t_{r-1}.
struct NewtonEigenvalues {
  int r = 0;
  std::vector<double> values;
};

NewtonEigenvalues newton_eigenvalues(const PrincipalCurvatureProfile& profile, int r);

struct EllipticityCheck {
  bool elliptic = false;
  double margin = 0.0;  // min over groups of t_r
};

EllipticityCheck check_elliptic(const PrincipalCurvatureProfile& profile, int r);

inline constexpr double kRMinimalTolerance = 1e-10;

/// |S_{r+1}| <= tol * max(1, max|k|)^{r+1}.
bool check_r_minimal(const PrincipalCurvatureProfile& profile, int r,
                     double tol = kRMinimalTolerance);

/// H_r * H_{r+2} <= 0 for an r-minimal profile. Throws InvalidArgument when
/// the profile is not r-minimal.
bool caminha_check(const PrincipalCurvatureProfile& profile, int r,
                   double tol = kRMinimalTolerance);

/// Radii of S^m(r1) x S^{n-m}(r2) in the unit sphere, r1^2 + r2^2 = 1.
struct CliffordRadii {
  double r1 = 0.0;
  double r2 = 0.0;
  double residual = 0.0;  // S_{r+1} at the returned radii
};

/// Curvatures r2/r1 (multiplicity m) and -r1/r2 (multiplicity n-m), before
/// orientation normalization.
PrincipalCurvatureProfile generalized_clifford_profile(int m, int n, double r1);

/// Every r1 in (1e-6, 1 - 1e-6) where S_{r+1} changes sign, located by
/// bisection. Ascending in r1.
std::vector<CliffordRadii> generalized_clifford_roots(int m, int n, int r);

/// Radii making S^m(r1) x S^{n-m}(r2) r-minimal. For r = 0 returns
/// (sqrt(m/n), sqrt((n-m)/n)). When several roots exist, returns the one with
/// the smallest r1 whose normalized profile is elliptic for L_r, falling back
/// to the smallest root. Throws NoSolution if S_{r+1} never changes sign.
CliffordRadii solve_generalized_clifford(int m, int n, int r);

}  // namespace specgeo
