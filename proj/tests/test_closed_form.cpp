#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "specgeo/closed_form.hpp"
#include "specgeo/errors.hpp"

using namespace specgeo;

namespace {

Spectrum from_modes(const std::map<Rational, int>& modes, double cutoff) {
  std::vector<SpectrumEntry> entries;
  for (const auto& [v, m] : modes) {
    entries.push_back({to_double(v), m});
  }
  return Spectrum(entries, cutoff);
}

}  // namespace

TEST_CASE("sphere_spectrum") {
  CHECK(approx_equal(sphere_spectrum(1, std::sqrt(0.5), 10.0), Spectrum({{0, 1}, {2, 2}, {8, 2}}, 10.0), 1e-12));
  CHECK(sphere_spectrum(2, 1.0, 7.0) == Spectrum({{0, 1}, {2, 3}, {6, 5}}, 7.0));
  CHECK(sphere_spectrum(3, 2.0, 0.5) == Spectrum({{0, 1}}, 0.5));
  CHECK_THROWS_AS(sphere_spectrum(2, 1.0, kInfinity), InvalidArgument);
  CHECK_THROWS_AS(sphere_spectrum(0, 1.0, 3.0), InvalidArgument);
}

TEST_CASE("sphere multiplicities match harmonic polynomial dimensions") {
  for (int d = 1; d <= 7; ++d) {
    for (int k = 0; k <= 8; ++k) {
      CHECK(sphere_multiplicity(d, k) == oracle::harmonic_dimension(d, k));
    }
  }
}

TEST_CASE("circle spectrum matches a refined finite-difference circle") {
  const double radius = 0.8;
  const auto fd = oracle::circle_fd_eigenvalues(radius, 400);
  const auto s = sphere_spectrum(1, radius, 20.0);
  int pos = 0;
  for (const auto& e : s.entries()) {
    for (int i = 0; i < e.multiplicity; ++i, ++pos) {
      CHECK(std::abs(fd[pos] - e.value) <= 1e-3 * std::max(1.0, e.value));
    }
  }
}

TEST_CASE("flat torus spectrum matches the lattice oracle") {
  const double l = 2.0 * M_PI / std::sqrt(2.0);
  const auto flat = flat_torus_spectrum(l, l, 30.0);
  const auto lattice = oracle::flat_torus_lattice(Rational(1, 2), Rational(1, 2), Rational(30));
  CHECK(approx_equal(flat, from_modes(lattice, 30.0), 1e-12));
}

TEST_CASE("laplace_spectrum of model hypersurfaces") {
  CHECK(laplace_spectrum(ProductSphereModel::clifford(1, 2), 10.0) ==
        Spectrum({{0, 1}, {2, 4}, {4, 4}, {8, 4}}, 10.0));
  CHECK(laplace_spectrum(ProductSphereModel::clifford(1, 3), 7.0) ==
        Spectrum({{0, 1}, {3, 5}, {6, 6}}, 7.0));
  CHECK(laplace_spectrum(ProductSphereModel::great_sphere(2), 7.0) ==
        Spectrum({{0, 1}, {2, 3}, {6, 5}}, 7.0));
}

TEST_CASE("laplace_spectrum agrees with mode enumeration") {
  for (int n = 2; n <= 6; ++n) {
    for (int m = 1; m <= n - 1; ++m) {
      const Rational cutoff(4 * n);
      const auto modes = oracle::product_sphere_modes(m, Rational(m, n), n - m, Rational(n - m, n), cutoff);
      const auto model = ProductSphereModel::clifford(m, n);
      CHECK(laplace_spectrum(model, to_double(cutoff)) == from_modes(modes, to_double(cutoff)));
      CHECK(exact_laplace_spectrum(model, to_double(cutoff)).entries() == modes);
    }
  }
}

TEST_CASE("jacobi_spectrum") {
  const auto j = jacobi_spectrum(ProductSphereModel::clifford(1, 2), 6.0);
  CHECK(j == Spectrum({{-4, 1}, {-2, 4}, {0, 4}, {4, 4}}, 6.0));
  CHECK_THROWS_AS(jacobi_spectrum(ProductSphereModel::generalized_clifford(1, 3, 1), 5.0),
                  InvalidArgument);
}

TEST_CASE("morse_index and lambda1") {
  CHECK(morse_index(ProductSphereModel::clifford(1, 2)) == 5);
  for (int n = 2; n <= 6; ++n) {
    CHECK(morse_index(ProductSphereModel::great_sphere(n)) == 1);
    for (int m = 1; m <= n - 1; ++m) {
      const auto model = ProductSphereModel::clifford(m, n);
      CHECK(model.squared_norm() == doctest::Approx(n));
      CHECK(morse_index(model) == n + 3);
      CHECK(lambda1(model) == doctest::Approx(n));
      const auto lap = laplace_spectrum(model, 2.0 * n + 1.0);
      CHECK(count_equal(lap, n) == n + 2);
      CHECK(count_at_or_below(lap, n) == n + 3);
    }
  }
}

TEST_CASE("coordinate eigenfunctions") {
  const auto r = verify_coordinate_eigenfunctions(ProductSphereModel::clifford(1, 2));
  CHECK(r.passed);
  CHECK(r.full);
  CHECK(r.n_multiplicity == 4);
  CHECK(r.s_multiplicity == 4);
  const auto g = verify_coordinate_eigenfunctions(ProductSphereModel::great_sphere(3));
  CHECK(g.passed);
  CHECK_FALSE(g.full);
  CHECK(g.n_multiplicity == 4);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(ProductSphereModel({RoundSphereFactor::exact(1, Rational(1, 2)),
                                      RoundSphereFactor::exact(1, Rational(1, 3))}),
                  InvalidArgument);
  CHECK_THROWS_AS(ProductSphereModel({RoundSphereFactor::exact(2, Rational(1, 2))}), InvalidArgument);
  CHECK_THROWS_AS(ProductSphereModel::clifford(0, 2), InvalidArgument);
  CHECK(ProductSphereModel::clifford(2, 5).is_minimal());
  CHECK_FALSE(ProductSphereModel({RoundSphereFactor::exact(1, Rational(1, 3)),
                                  RoundSphereFactor::exact(1, Rational(2, 3))})
                  .is_minimal());
}

TEST_CASE("lr_spectrum at r = 0 is the Laplace spectrum") {
  const auto model = ProductSphereModel::clifford(2, 5);
  CHECK(approx_equal(lr_spectrum(model, 0, 20.0), laplace_spectrum(model, 20.0), 1e-12));
}

TEST_CASE("(1, 3, 1): L_1 on S^1 x S^2") {
  const auto model = ProductSphereModel::generalized_clifford(1, 3, 1);
  const double s2 = std::sqrt(2.0);
  // t_1 = (2 sqrt2, 1/sqrt2), radii^2 = (2/3, 1/3): every eigenvalue is 3 sqrt2 (k^2 + j(j+1)/2)
  const auto lr = lr_spectrum(model, 1, 20.0);
  REQUIRE(lr.size() >= 3);
  CHECK(lr.entries()[0].value == doctest::Approx(0.0));
  CHECK(lr.entries()[1].value == doctest::Approx(3.0 * s2).epsilon(1e-10));
  CHECK(lr.entries()[1].multiplicity == 5);
  CHECK(lr.entries()[2].value == doctest::Approx(6.0 * s2).epsilon(1e-10));
  CHECK(lr.entries()[2].multiplicity == 6);

  const auto lemma = verify_lemma44(model, 1);
  CHECK(lemma.passed);
  CHECK(lemma.x_eigenvalue == doctest::Approx(3.0 * s2).epsilon(1e-10));
  CHECK(lemma.x_multiplicity == 5);
  CHECK(jr_potential(model, 1) == doctest::Approx(6.0 * s2).epsilon(1e-10));
  CHECK(r_index(model, 1) == 6);
}

TEST_CASE("lr_spectrum scales linearly with the Newton eigenvalues") {
  const auto model = ProductSphereModel::generalized_clifford(2, 5, 1);
  const auto p = model.profile();
  const auto t = newton_eigenvalues(p, 1).values;
  const auto lr = lr_spectrum(model, 1, 40.0);
  const auto a = sphere_spectrum(2, model.factors()[0].radius(), 40.0 / t[0] + 1.0);
  const auto b = sphere_spectrum(3, model.factors()[1].radius(), 40.0 / t[1] + 1.0);
  std::vector<SpectrumEntry> raw;
  for (const auto& x : a.entries()) {
    for (const auto& y : b.entries()) {
      const double v = t[0] * x.value + t[1] * y.value;
      if (v < 40.0) {
        raw.push_back({v, x.multiplicity * y.multiplicity});
      }
    }
  }
  CHECK(approx_equal(lr, Spectrum::merged(raw, 40.0), 1e-9));
}

TEST_CASE("r-index of every solvable generalized Clifford model with n <= 5") {
  int solved = 0;
  for (int n = 2; n <= 5; ++n) {
    for (int m = 1; m <= n - 1; ++m) {
      for (int r = 0; r <= n - 1; ++r) {
        if (generalized_clifford_roots(m, n, r).empty()) {
          CHECK_THROWS_AS(ProductSphereModel::generalized_clifford(m, n, r), NoSolution);
          continue;
        }
        const auto model = ProductSphereModel::generalized_clifford(m, n, r);
        if (!check_elliptic(model.profile(), r).elliptic) {
          continue;
        }
        CAPTURE(m);
        CAPTURE(n);
        CAPTURE(r);
        CHECK(verify_lemma44(model, r).passed);
        CHECK(r_index(model, r) == n + 3);
        ++solved;
      }
    }
  }
  CHECK(solved >= 14);
}

TEST_CASE("enumeration is stable under cutoff changes") {
  const auto model = ProductSphereModel::clifford(2, 4);
  const auto big = laplace_spectrum(model, 40.0);
  CHECK(big.truncated(15.0) == laplace_spectrum(model, 15.0));
}
