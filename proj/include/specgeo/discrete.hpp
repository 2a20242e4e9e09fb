#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "specgeo/spectrum.hpp"

namespace specgeo {

/// Largest node count the dense solver accepts (64 x 64).
inline constexpr int kDenseSolverCap = 4096;

/// Uniform periodic grid on the flat torus R^2 / (period_x Z x period_y Z).
/// Node (i, j) has flat index j * nx + i (row-major, rows along y).
struct GridTorus {
  double period_x = 1.0;
  double period_y = 1.0;
  int nx = 4;
  int ny = 4;

  /// Throws InvalidArgument unless periods > 0 and resolutions >= 4.
  static GridTorus make(double period_x, double period_y, int nx, int ny);
  /// Periods 2π/√2 in both directions: the flat model of the minimal
  /// Clifford torus in S^3.
  static GridTorus clifford(int resolution);

  int node_count() const { return nx * ny; }
  double hx() const { return period_x / nx; }
  double hy() const { return period_y / ny; }
  double node_measure() const { return hx() * hy(); }
  int index(int i, int j) const { return j * nx + i; }

  friend bool operator==(const GridTorus&, const GridTorus&) = default;
};

/// Δ_h + q on a GridTorus: the periodic 5-point Laplacian (geometer sign, so
/// Δ_h is negative semidefinite) plus a diagonal potential.
class DiscreteOperator {
 public:
  explicit DiscreteOperator(GridTorus grid);

  const GridTorus& grid() const { return grid_; }
  const Eigen::VectorXd& potential() const { return potential_; }
  double coeff_x() const { return coeff_x_; }
  double coeff_y() const { return coeff_y_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd dense() const;

  /// <u, v> with the node measure h_x h_y.
  double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

 private:
  friend DiscreteOperator add_potential(const DiscreteOperator&, const Eigen::VectorXd&);

  GridTorus grid_;
  double coeff_x_;
  double coeff_y_;
  Eigen::VectorXd potential_;
};

DiscreteOperator build_laplacian(const GridTorus& grid);

/// op + diag(q). Throws InvalidArgument on a size mismatch.
DiscreteOperator add_potential(const DiscreteOperator& op, const Eigen::VectorXd& q);

/// Strictly positive per-node weight.
class WeightField {
 public:
  /// Throws InvalidArgument if any value is <= 0 or not finite.
  explicit WeightField(Eigen::VectorXd values);
  static WeightField constant(int nodes, double value);

  const Eigen::VectorXd& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  Eigen::VectorXd values_;
};

/// All eigenpairs of op u = -λ p u, eigenvalues ascending. Eigenvectors are
/// columns, normalized so that <u_i, p u_j> = δ_ij with the node measure.
struct WeightedEigenpairs {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // empty when only eigenvalues were requested
};

/// Reduces the pencil (-op, diag p) to D^{-1/2} (-op) D^{-1/2} and runs a
/// dense symmetric eigensolver. Throws InvalidArgument past `max_nodes`.
WeightedEigenpairs solve_weighted_pairs(const DiscreteOperator& op, const WeightField& weight,
                                        bool with_vectors = true,
                                        int max_nodes = kDenseSolverCap);

/// The full weighted spectrum, merged, with cutoff +inf.
Spectrum solve_weighted(const DiscreteOperator& op, const WeightField& weight,
                        int max_nodes = kDenseSolverCap);

/// -<u, op u> / <u, p u>. Throws InvalidArgument for u = 0.
double rayleigh(const DiscreteOperator& op, const WeightField& weight, const Eigen::VectorXd& u);

/// ||op u + λ p u|| / ||u||.
double residual(const DiscreteOperator& op, const WeightField& weight, double lambda,
                const Eigen::VectorXd& u);

// Random smooth stand-ins: low-frequency trigonometric polynomials.

/// sum over |a|, |b| <= max_frequency of c_ab cos + s_ab sin of
/// 2π(a x / period_x + b y / period_y), coefficients uniform in [-1, 1],
/// rescaled so the field spans [low, high] exactly on the grid.
Eigen::VectorXd random_trig_field(const GridTorus& grid, std::mt19937_64& rng, double low,
                                  double high, int max_frequency = 2);

/// Positive weight with min exactly `low` and max exactly `high`.
WeightField random_weight(const GridTorus& grid, std::mt19937_64& rng, double low = 0.5,
                          double high = 2.0);

struct ConvergenceRow {
  int resolution = 0;
  std::vector<double> exact;
  std::vector<double> approx;
  std::vector<double> error;  // relative, absolute for the zero eigenvalue
  std::vector<std::optional<double>> order;  // vs the previous row, when defined
};

struct ConvergenceTable {
  double period_x = 0.0;
  double period_y = 0.0;
  std::vector<ConvergenceRow> rows;
};

/// For each square resolution N, compares the first `modes` distinct
/// closed-form flat-torus eigenvalues against the discrete eigenvalue at the
/// same sorted position. Resolutions must be strictly increasing.
ConvergenceTable convergence_study(double period_x, double period_y,
                                   const std::vector<int>& resolutions, int modes = 6);

}  // namespace specgeo
