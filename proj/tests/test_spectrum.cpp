#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "specgeo/errors.hpp"
#include "specgeo/spectrum.hpp"

using namespace specgeo;

namespace {

// Flat Clifford torus spectrum 2(p^2 + q^2) below 10, from lattice enumeration.
Spectrum lattice_clifford() { return Spectrum({{0, 1}, {2, 4}, {4, 4}, {8, 4}}, 10.0); }

Spectrum random_spectrum(std::mt19937_64& rng, double cutoff) {
  std::uniform_real_distribution<double> value(-5.0, cutoff - 0.1);
  std::uniform_int_distribution<int> mult(1, 5);
  std::vector<SpectrumEntry> raw;
  const int size = 1 + static_cast<int>(rng() % 12);
  for (int i = 0; i < size; ++i) {
    // quarter-integers so that thresholds can hit entries exactly
    raw.push_back({std::round(value(rng) * 4.0) / 4.0, mult(rng)});
  }
  return Spectrum::merged(raw, cutoff);
}

}  // namespace

TEST_CASE("lattice oracle reproduces the frozen Clifford spectrum") {
  const auto modes = oracle::flat_torus_lattice(Rational(1, 2), Rational(1, 2), Rational(10));
  std::vector<SpectrumEntry> entries;
  for (const auto& [v, m] : modes) {
    entries.push_back({to_double(v), m});
  }
  CHECK(Spectrum(entries, 10.0) == lattice_clifford());
}

TEST_CASE("count on the lattice spectrum") {
  const Spectrum s({{0, 1}, {2, 4}, {4, 4}}, 10.0);
  CHECK(count(s, {2.0, CountMode::at_or_below, 0.0}) == 5);
  CHECK(count(s, {2.0, CountMode::equal, 0.0}) == 4);
  CHECK(count(s, {2.0, CountMode::strict_below, 0.0}) == 1);
  CHECK(count(Spectrum(), {10.0, CountMode::strict_below, 0.0}) == 0);
}

TEST_CASE("count rejects uncertified thresholds and overlapping tolerances") {
  const Spectrum s({{0, 1}, {2, 4}, {4, 4}}, 5.0);
  CHECK_THROWS_AS(count_below(s, 5.0), UncertifiedCount);
  CHECK_THROWS_AS(count_at_or_below(s, 6.0), UncertifiedCount);
  CHECK_THROWS_AS(count_equal(s, 4.9, 0.2), UncertifiedCount);
  CHECK_NOTHROW(count_below(s, 4.99));
  CHECK_THROWS_AS(count_equal(s, 3.0, 1.0), InvalidArgument);
  CHECK(count_equal(s, 2.05, 0.1) == 4);
  CHECK(count_below(s, 2.05, 0.1) == 1);
}

TEST_CASE("spectrum invariants are enforced") {
  CHECK_THROWS_AS(Spectrum({{1, 1}, {0, 1}}, 5.0), InvalidArgument);
  CHECK_THROWS_AS(Spectrum({{1, 1}, {1 + 1e-12, 1}}, 5.0), InvalidArgument);
  CHECK_THROWS_AS(Spectrum({{1, 0}}, 5.0), InvalidArgument);
  const auto merged = Spectrum::merged({{1, 1}, {1 + 1e-12, 2}, {0, 1}}, 5.0);
  REQUIRE(merged.size() == 2);
  CHECK(merged.entries()[1].multiplicity == 3);
  CHECK(merged.entries()[1].value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("shift") {
  const Spectrum s({{0, 1}, {2, 4}}, 10.0);
  const auto shifted = shift(s, 3.0);
  CHECK(shifted == Spectrum({{-3, 1}, {-1, 4}}, 7.0));
  CHECK(shift(s, 0.0) == s);
}

TEST_CASE("product_sum") {
  const Spectrum a({{0, 1}, {2, 2}}, 4.0);
  CHECK(product_sum(a, a, 4.0) == Spectrum({{0, 1}, {2, 4}}, 4.0));

  const Spectrum x({{0, 1}, {1.5, 3}, {7, 2}}, 9.0);
  CHECK(product_sum(x, Spectrum({{0, 1}}, kInfinity), 9.0) == x);

  // circle of radius 1/sqrt(2): 2k^2, multiplicity 2
  const Spectrum circle({{0, 1}, {2, 2}, {8, 2}}, 10.0);
  CHECK(product_sum(circle, circle, 10.0) == lattice_clifford());

  CHECK_THROWS_AS(product_sum(circle, circle, 11.0), UncertifiedCount);
}

TEST_CASE("exact spectra merge coinciding sums") {
  ExactSpectrum a(10.0);
  a.add(Rational(1, 3), 1);
  a.add(Rational(2, 3), 2);
  ExactSpectrum b(10.0);
  b.add(Rational(0), 1);
  b.add(Rational(1, 3), 1);
  const auto s = product_sum(a, b, 10.0);
  CHECK(s.entries().at(Rational(2, 3)) == 3);
  const auto shifted = shift(s, Rational(2, 3));
  CHECK(shifted.entries().at(Rational(0)) == 3);
}

TEST_CASE("property: counting identities on random spectra") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_spectrum(rng, 20.0);
    std::uniform_real_distribution<double> thr(-6.0, 19.0);
    for (int q = 0; q < 10; ++q) {
      const double a = (q % 2 == 0) ? thr(rng) : std::round(thr(rng) * 4.0) / 4.0;
      const double b = a + std::abs(thr(rng)) * 0.05;
      const int lt = count_below(s, a);
      const int le = count_at_or_below(s, a);
      CHECK(lt <= le);
      CHECK(count_equal(s, a) == le - lt);
      if (b < s.cutoff()) {
        CHECK(le <= count_at_or_below(s, b));
      }
      const double c = thr(rng);
      const auto shifted = shift(s, c);
      // thresholds are shifted with the same rounding as the values
      if (std::find_if(s.entries().begin(), s.entries().end(),
                       [&](const SpectrumEntry& e) { return e.value == a; }) == s.entries().end()) {
        CHECK(count_below(shifted, a - c) == lt);
        CHECK(count_at_or_below(shifted, a - c) == le);
      }
    }
  }
}

TEST_CASE("property: product_sum is commutative and associative") {
  std::mt19937_64 rng(7);
  auto nonneg = [&](double cutoff) {
    std::vector<SpectrumEntry> raw{{0.0, 1}};
    std::uniform_real_distribution<double> v(0.0, cutoff);
    for (int i = 0; i < 5; ++i) {
      raw.push_back({std::round(v(rng) * 8.0) / 8.0, 1 + static_cast<int>(rng() % 3)});
    }
    return Spectrum::merged(raw, cutoff);
  };
  for (int trial = 0; trial < 100; ++trial) {
    const double cutoff = 12.0;
    const auto a = nonneg(cutoff);
    const auto b = nonneg(cutoff);
    const auto c = nonneg(cutoff);
    CHECK(approx_equal(product_sum(a, b, cutoff), product_sum(b, a, cutoff), 1e-12));
    CHECK(approx_equal(product_sum(product_sum(a, b, cutoff), c, cutoff),
                       product_sum(a, product_sum(b, c, cutoff), cutoff), 1e-12));
    int pairs = 0;
    for (const auto& x : a.entries()) {
      for (const auto& y : b.entries()) {
        if (x.value + y.value < cutoff) {
          pairs += x.multiplicity * y.multiplicity;
        }
      }
    }
    CHECK(product_sum(a, b, cutoff).total_multiplicity() == pairs);
  }
}
