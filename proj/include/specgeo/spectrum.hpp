#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "specgeo/rational.hpp"

namespace specgeo {

/// Two eigenvalues closer than this (relative to max(1, |value|)) are one entry.
inline constexpr double kMergeTolerance = 1e-9;

/// Default counting tolerance for spectra produced by the dense solver.
inline constexpr double kDiscreteCountTolerance = 1e-7;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct SpectrumEntry {
  double value = 0.0;
  int multiplicity = 0;

  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// A finite multiset of eigenvalues, sorted ascending, together with a
/// completeness promise: every eigenvalue strictly below `cutoff()` is listed
/// with its full multiplicity. Nothing is promised at or above the cutoff.
class Spectrum {
 public:
  /// Empty spectrum, complete everywhere.
  Spectrum() = default;

  /// Takes entries that already satisfy the invariants (strictly increasing,
  /// separated by more than the merge tolerance, multiplicities >= 1).
  /// Throws InvalidArgument otherwise.
  Spectrum(std::vector<SpectrumEntry> entries, double cutoff);

  /// Sorts and merges arbitrary (value, multiplicity) pairs. Values within
  /// `merge_tolerance` of the first value of a run collapse into one entry
  /// whose value is the multiplicity-weighted mean.
  static Spectrum merged(std::vector<SpectrumEntry> entries, double cutoff,
                         double merge_tolerance = kMergeTolerance);

  /// Each value counted once, then merged.
  static Spectrum from_values(std::span<const double> values, double cutoff,
                              double merge_tolerance = kMergeTolerance);

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  double cutoff() const { return cutoff_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  int total_multiplicity() const;
  std::optional<double> min_value() const;

  /// Drops entries at or above `new_cutoff`; the result is complete below
  /// min(cutoff(), new_cutoff).
  Spectrum truncated(double new_cutoff) const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<SpectrumEntry> entries_;
  double cutoff_ = kInfinity;
};

enum class CountMode { strict_below, at_or_below, equal };

struct CountQuery {
  double threshold = 0.0;
  CountMode mode = CountMode::strict_below;
  double tolerance = 0.0;
};

/// Sum of multiplicities of entries satisfying the query predicate, with
/// eigenvalues inside [a - eps, a + eps] treated as equal to a.
/// Throws UncertifiedCount if threshold + tolerance >= cutoff, and
/// InvalidArgument if the tolerance window holds two distinct entries.
int count(const Spectrum& spectrum, const CountQuery& query);

inline int count_below(const Spectrum& s, double a, double eps = 0.0) {
  return count(s, {a, CountMode::strict_below, eps});
}
inline int count_at_or_below(const Spectrum& s, double a, double eps = 0.0) {
  return count(s, {a, CountMode::at_or_below, eps});
}
inline int count_equal(const Spectrum& s, double a, double eps = 0.0) {
  return count(s, {a, CountMode::equal, eps});
}

/// Spectrum of L + c·p given the spectrum of L with weight p: every value
/// (and the cutoff) moves down by c.
Spectrum shift(const Spectrum& spectrum, double c);

/// Multiplies every value and the cutoff by factor > 0.
Spectrum scale(const Spectrum& spectrum, double factor);

/// Spectrum of a Riemannian product: all pairwise sums below `cutoff`, with
/// multiplicities multiplied. Throws UncertifiedCount when the factor cutoffs
/// cannot certify completeness below `cutoff`.
Spectrum product_sum(const Spectrum& a, const Spectrum& b, double cutoff);

/// Entrywise comparison with absolute tolerance on values, exact on
/// multiplicities and cutoffs.
bool approx_equal(const Spectrum& a, const Spectrum& b, double tolerance);

/// Spectrum with exact rational eigenvalues. Used for closed-form models so
/// that coinciding sums merge exactly. The cutoff stays a double; an entry
/// belongs to the spectrum iff to_double(value) < cutoff.
class ExactSpectrum {
 public:
  ExactSpectrum() = default;
  explicit ExactSpectrum(double cutoff) : cutoff_(cutoff) {}

  void add(const Rational& value, int multiplicity);

  const std::map<Rational, int>& entries() const { return entries_; }
  double cutoff() const { return cutoff_; }

  Spectrum to_spectrum() const;

 private:
  std::map<Rational, int> entries_;
  double cutoff_ = kInfinity;
};

ExactSpectrum shift(const ExactSpectrum& spectrum, const Rational& c);
ExactSpectrum product_sum(const ExactSpectrum& a, const ExactSpectrum& b, double cutoff);

}  // namespace specgeo
