#include "specgeo/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specgeo/errors.hpp"

namespace specgeo {

namespace {

double merge_scale(double a, double b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

bool within_merge_tolerance(double a, double b, double tolerance) {
  return std::abs(b - a) <= tolerance * merge_scale(a, b);
}

void check_cutoff(double cutoff) {
  if (std::isnan(cutoff)) {
    throw InvalidArgument("spectrum cutoff is NaN");
  }
}

}  // namespace

Spectrum::Spectrum(std::vector<SpectrumEntry> entries, double cutoff)
    : entries_(std::move(entries)), cutoff_(cutoff) {
  check_cutoff(cutoff_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!std::isfinite(e.value)) {
      throw InvalidArgument("spectrum entry is not finite");
    }
    if (e.multiplicity < 1) {
      throw InvalidArgument("spectrum multiplicity must be >= 1");
    }
    if (i > 0) {
      const double prev = entries_[i - 1].value;
      if (!(e.value > prev) || within_merge_tolerance(prev, e.value, kMergeTolerance)) {
        std::ostringstream msg;
        msg << "spectrum entries must be strictly increasing and separated by the merge tolerance ("
            << prev << ", " << e.value << ")";
        throw InvalidArgument(msg.str());
      }
    }
  }
}

Spectrum Spectrum::merged(std::vector<SpectrumEntry> entries, double cutoff,
                          double merge_tolerance) {
  check_cutoff(cutoff);
  std::sort(entries.begin(), entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });

  Spectrum out;
  out.cutoff_ = cutoff;
  std::size_t i = 0;
  while (i < entries.size()) {
    // A run chains consecutive values that are within tolerance of each other.
    std::size_t j = i + 1;
    while (j < entries.size() &&
           within_merge_tolerance(entries[j - 1].value, entries[j].value, merge_tolerance)) {
      ++j;
    }
    double weighted = 0.0;
    int total = 0;
    for (std::size_t k = i; k < j; ++k) {
      if (entries[k].multiplicity < 1) {
        throw InvalidArgument("spectrum multiplicity must be >= 1");
      }
      if (!std::isfinite(entries[k].value)) {
        throw InvalidArgument("spectrum entry is not finite");
      }
      weighted += entries[k].value * entries[k].multiplicity;
      total += entries[k].multiplicity;
    }
    const double value = (j - i == 1) ? entries[i].value : weighted / total;
    out.entries_.push_back({value, total});
    i = j;
  }
  return out;
}

Spectrum Spectrum::from_values(std::span<const double> values, double cutoff,
                               double merge_tolerance) {
  std::vector<SpectrumEntry> entries;
  entries.reserve(values.size());
  for (double v : values) {
    entries.push_back({v, 1});
  }
  return merged(std::move(entries), cutoff, merge_tolerance);
}

int Spectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& e : entries_) {
    total += e.multiplicity;
  }
  return total;
}

std::optional<double> Spectrum::min_value() const {
  if (entries_.empty()) {
    return std::nullopt;
  }
  return entries_.front().value;
}

Spectrum Spectrum::truncated(double new_cutoff) const {
  Spectrum out;
  out.cutoff_ = std::min(cutoff_, new_cutoff);
  for (const auto& e : entries_) {
    if (e.value < out.cutoff_) {
      out.entries_.push_back(e);
    }
  }
  return out;
}

int count(const Spectrum& spectrum, const CountQuery& query) {
  const double a = query.threshold;
  const double eps = query.tolerance;
  if (std::isnan(a)) {
    throw InvalidArgument("count threshold is NaN");
  }
  if (!(eps >= 0.0)) {
    throw InvalidArgument("count tolerance must be nonnegative");
  }
  if (!(a + eps < spectrum.cutoff())) {
    std::ostringstream msg;
    msg << "count at threshold " << a << " is not certified by cutoff " << spectrum.cutoff();
    throw UncertifiedCount(msg.str());
  }

  int in_window = 0;
  int below = 0;
  int at = 0;
  for (const auto& e : spectrum.entries()) {
    if (std::abs(e.value - a) <= eps) {
      ++in_window;
      at += e.multiplicity;
    } else if (e.value < a) {
      below += e.multiplicity;
    }
  }
  if (eps > 0.0 && in_window > 1) {
    std::ostringstream msg;
    msg << "count tolerance " << eps << " overlaps " << in_window << " distinct entries near " << a;
    throw InvalidArgument(msg.str());
  }

  switch (query.mode) {
    case CountMode::strict_below:
      return below;
    case CountMode::at_or_below:
      return below + at;
    case CountMode::equal:
      return at;
  }
  return 0;
}

Spectrum shift(const Spectrum& spectrum, double c) {
  std::vector<SpectrumEntry> entries = spectrum.entries();
  for (auto& e : entries) {
    e.value -= c;
  }
  // Shifting by a constant keeps gaps, but rounding can in principle bring two
  // tiny-gap entries together; merged() absorbs that.
  return Spectrum::merged(std::move(entries), spectrum.cutoff() - c);
}

Spectrum scale(const Spectrum& spectrum, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw InvalidArgument("spectrum scale factor must be positive and finite");
  }
  std::vector<SpectrumEntry> entries = spectrum.entries();
  for (auto& e : entries) {
    e.value *= factor;
  }
  return Spectrum::merged(std::move(entries), spectrum.cutoff() * factor);
}

Spectrum product_sum(const Spectrum& a, const Spectrum& b, double cutoff) {
  const double min_a = a.min_value().value_or(kInfinity);
  const double min_b = b.min_value().value_or(kInfinity);
  if (a.cutoff() + min_b < cutoff || b.cutoff() + min_a < cutoff) {
    std::ostringstream msg;
    msg << "product cutoff " << cutoff << " exceeds what factor cutoffs (" << a.cutoff() << ", "
        << b.cutoff() << ") certify";
    throw UncertifiedCount(msg.str());
  }
  std::vector<SpectrumEntry> sums;
  for (const auto& x : a.entries()) {
    for (const auto& y : b.entries()) {
      const double v = x.value + y.value;
      if (v < cutoff) {
        sums.push_back({v, x.multiplicity * y.multiplicity});
      }
    }
  }
  return Spectrum::merged(std::move(sums), cutoff);
}

bool approx_equal(const Spectrum& a, const Spectrum& b, double tolerance) {
  if (a.cutoff() != b.cutoff() || a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.entries()[i];
    const auto& y = b.entries()[i];
    if (x.multiplicity != y.multiplicity || std::abs(x.value - y.value) > tolerance) {
      return false;
    }
  }
  return true;
}

void ExactSpectrum::add(const Rational& value, int multiplicity) {
  if (multiplicity < 1) {
    throw InvalidArgument("spectrum multiplicity must be >= 1");
  }
  if (to_double(value) < cutoff_) {
    entries_[value] += multiplicity;
  }
}

Spectrum ExactSpectrum::to_spectrum() const {
  std::vector<SpectrumEntry> entries;
  entries.reserve(entries_.size());
  for (const auto& [value, mult] : entries_) {
    entries.push_back({to_double(value), mult});
  }
  return Spectrum(std::move(entries), cutoff_);
}

ExactSpectrum shift(const ExactSpectrum& spectrum, const Rational& c) {
  ExactSpectrum out(spectrum.cutoff() - to_double(c));
  for (const auto& [value, mult] : spectrum.entries()) {
    out.add(value - c, mult);
  }
  return out;
}

ExactSpectrum product_sum(const ExactSpectrum& a, const ExactSpectrum& b, double cutoff) {
  const double min_a = a.entries().empty() ? kInfinity : to_double(a.entries().begin()->first);
  const double min_b = b.entries().empty() ? kInfinity : to_double(b.entries().begin()->first);
  if (a.cutoff() + min_b < cutoff || b.cutoff() + min_a < cutoff) {
    throw UncertifiedCount("product cutoff exceeds what the factor cutoffs certify");
  }
  ExactSpectrum out(cutoff);
  for (const auto& [x, mx] : a.entries()) {
    for (const auto& [y, my] : b.entries()) {
      out.add(x + y, mx * my);
    }
  }
  return out;
}

}  // namespace specgeo
