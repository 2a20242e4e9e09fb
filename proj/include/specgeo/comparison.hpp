#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specgeo/spectrum.hpp"

namespace specgeo {

/// inf and sup of q/p, and whether the ratio counts as constant
/// (sup - inf <= 1e-12 * max(1, |inf|, |sup|)).
struct RatioBounds {
  double infimum = 0.0;
  double supremum = 0.0;
  bool constant = false;
};

inline constexpr double kConstantRatioTolerance = 1e-12;

/// Throws InvalidArgument on size mismatch, empty input or p <= 0.
RatioBounds inf_ratio(std::span<const double> q, std::span<const double> p);
RatioBounds inf_ratio(double q, double p);

enum class ComparisonBranch { nonconstant, constant };

/// Outcome of comparing the weighted spectra of L and L^ = L + q.
///
/// nonconstant: verdict = N^{L^,p}_{<a-a0} >= N^{L,p}_{<=a}, reported as
///   lhs_count / rhs_count.
/// constant (q/p = c): verdict = N^{L^,p}_{<=a-c} == N^{L,p}_{<=a} (lhs/rhs)
///   and N^{L^,p}_{<a-c} == N^{L,p}_{<a} (lhs_strict/rhs_strict).
struct ComparisonReport {
  double a = 0.0;
  double a0 = 0.0;
  ComparisonBranch branch = ComparisonBranch::nonconstant;
  int lhs_count = 0;
  int rhs_count = 0;
  std::optional<int> lhs_strict_count;
  std::optional<int> rhs_strict_count;
  bool verdict = false;
};

/// Counts use tolerance `eps` (see CountQuery). Throws UncertifiedCount when
/// either spectrum's cutoff does not cover the thresholds.
ComparisonReport check_comparison(const Spectrum& spec_l, const Spectrum& spec_lhat,
                                  const RatioBounds& ratio, double a, double eps = 0.0);

struct IndexBoundReport {
  int n = 0;
  int bound = 0;                             // N^Δ_{<=n}
  std::vector<SpectrumEntry> contributing;   // entries with value <= n
  std::optional<double> lambda1;             // smallest positive eigenvalue, if <= n
  bool lambda1_below_n = false;
  int multiplicity_at_n = 0;
  bool multiplicity_at_n_at_least_n_plus_3 = false;
  // multiplicity at n >= n+2, the coordinate-function floor of a full immersion.
  bool fullness_witnessed = false;
};

/// Lower bound for the Morse index of a minimal hypersurface from its Laplace
/// spectrum: the number of eigenvalues in [0, n], with multiplicity.
IndexBoundReport theorem12_bound(const Spectrum& laplace, int n, double eps = 0.0);

/// The bound above when it is guaranteed to reach n+4 (λ1 < n, or the
/// eigenvalue n has multiplicity >= n+3); nullopt otherwise.
std::optional<int> corollary13(const Spectrum& laplace, int n, double eps = 0.0);

enum class Regime { rigidity, strict, hypothesis_failure };

struct FloorCheck {
  std::string label;
  double eigenvalue = 0.0;
  int count = 0;
  int floor = 0;
  bool met = false;
};

struct CertificateReport {
  std::optional<int> bound;
  Regime regime = Regime::hypothesis_failure;
  std::vector<FloorCheck> floors;
  std::string note;
};

/// Constant |A|^2 = S > 0: bound N^Δ_{<n+S}. For S <= n reports the rigidity
/// regime (Clifford, index n+3); for S > n checks that n and S both carry
/// multiplicity >= n+2, in which case the bound is at least 2n+5.
CertificateReport certify_constant_s(const Spectrum& laplace, int n, double s, double eps = 0.0);

/// S >= n, from the spectrum of J: requires N^J_{<-n} >= n+3 and
/// N^J_{=-n} >= n+2; the bound is their sum.
CertificateReport certify_s_big(const Spectrum& jacobi, int n, double eps = 0.0);

/// r-minimal with S_r > 0: bound N^{L_r}_{<(n-r)S_r-(r+2)S_{r+2}}. With
/// `weighted`, `lr` is the S_r-weighted spectrum and every threshold is
/// divided by S_r. Rigidity when -(r+2)S_{r+2}/S_r <= n-r; otherwise checks
/// both coordinate eigenvalue groups for multiplicity >= n+2.
CertificateReport certify_rmin(const Spectrum& lr, int n, int r, double s_r, double s_r2,
                               bool weighted, double eps = 0.0);

const char* to_string(ComparisonBranch branch);
const char* to_string(Regime regime);

}  // namespace specgeo
