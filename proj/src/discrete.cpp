#include "specgeo/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specgeo/closed_form.hpp"
#include "specgeo/errors.hpp"

namespace specgeo {

GridTorus GridTorus::make(double period_x, double period_y, int nx, int ny) {
  if (!(period_x > 0.0) || !(period_y > 0.0) || !std::isfinite(period_x) ||
      !std::isfinite(period_y)) {
    throw InvalidArgument("grid periods must be positive");
  }
  if (nx < 4 || ny < 4) {
    throw InvalidArgument("grid resolution must be >= 4 in each direction");
  }
  return {period_x, period_y, nx, ny};
}

GridTorus GridTorus::clifford(int resolution) {
  const double period = 2.0 * M_PI / std::sqrt(2.0);
  return make(period, period, resolution, resolution);
}

DiscreteOperator::DiscreteOperator(GridTorus grid)
    : grid_(grid),
      coeff_x_(1.0 / (grid.hx() * grid.hx())),
      coeff_y_(1.0 / (grid.hy() * grid.hy())),
      potential_(Eigen::VectorXd::Zero(grid.node_count())) {}

DiscreteOperator build_laplacian(const GridTorus& grid) {
  return DiscreteOperator(GridTorus::make(grid.period_x, grid.period_y, grid.nx, grid.ny));
}

DiscreteOperator add_potential(const DiscreteOperator& op, const Eigen::VectorXd& q) {
  if (q.size() != op.grid().node_count()) {
    std::ostringstream msg;
    msg << "potential has " << q.size() << " values, grid has " << op.grid().node_count()
        << " nodes";
    throw InvalidArgument(msg.str());
  }
  DiscreteOperator out = op;
  out.potential_ += q;
  return out;
}

Eigen::VectorXd DiscreteOperator::apply(const Eigen::VectorXd& u) const {
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  if (u.size() != grid_.node_count()) {
    throw InvalidArgument("vector size does not match the grid");
  }
  Eigen::VectorXd out(u.size());
  for (int j = 0; j < ny; ++j) {
    const int jp = (j + 1) % ny;
    const int jm = (j + ny - 1) % ny;
    for (int i = 0; i < nx; ++i) {
      const int ip = (i + 1) % nx;
      const int im = (i + nx - 1) % nx;
      const int c = grid_.index(i, j);
      const double center = u[c];
      out[c] = coeff_x_ * (u[grid_.index(ip, j)] - 2.0 * center + u[grid_.index(im, j)]) +
               coeff_y_ * (u[grid_.index(i, jp)] - 2.0 * center + u[grid_.index(i, jm)]) +
               potential_[c] * center;
    }
  }
  return out;
}

Eigen::MatrixXd DiscreteOperator::dense() const {
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  const int nodes = grid_.node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int c = grid_.index(i, j);
      a(c, c) += -2.0 * coeff_x_ - 2.0 * coeff_y_ + potential_[c];
      a(c, grid_.index((i + 1) % nx, j)) += coeff_x_;
      a(c, grid_.index((i + nx - 1) % nx, j)) += coeff_x_;
      a(c, grid_.index(i, (j + 1) % ny)) += coeff_y_;
      a(c, grid_.index(i, (j + ny - 1) % ny)) += coeff_y_;
    }
  }
  return a;
}

double DiscreteOperator::inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  return grid_.node_measure() * u.dot(v);
}

WeightField::WeightField(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() == 0) {
    throw InvalidArgument("weight field is empty");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw InvalidArgument("weight must be strictly positive");
    }
  }
}

WeightField WeightField::constant(int nodes, double value) {
  return WeightField(Eigen::VectorXd::Constant(nodes, value));
}

WeightedEigenpairs solve_weighted_pairs(const DiscreteOperator& op, const WeightField& weight,
                                        bool with_vectors, int max_nodes) {
  const int nodes = op.grid().node_count();
  if (nodes > max_nodes) {
    std::ostringstream msg;
    msg << "grid has " << nodes << " nodes, dense solver cap is " << max_nodes;
    throw InvalidArgument(msg.str());
  }
  if (weight.size() != nodes) {
    throw InvalidArgument("weight field does not match the grid");
  }
  // op u = -λ p u  <=>  D^{-1/2} (-op) D^{-1/2} y = λ y,  u = D^{-1/2} y
  const Eigen::VectorXd inv_sqrt_p = weight.values().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd reduced = -op.dense();
  reduced = inv_sqrt_p.asDiagonal() * reduced * inv_sqrt_p.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      reduced, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("dense symmetric eigensolver did not converge");
  }
  WeightedEigenpairs out;
  out.eigenvalues = solver.eigenvalues();
  if (with_vectors) {
    // y is Euclidean-orthonormal; rescale so <u, p u>_h = 1.
    const double measure = op.grid().node_measure();
    out.eigenvectors = inv_sqrt_p.asDiagonal() * solver.eigenvectors() / std::sqrt(measure);
  }
  return out;
}

Spectrum solve_weighted(const DiscreteOperator& op, const WeightField& weight, int max_nodes) {
  const auto pairs = solve_weighted_pairs(op, weight, false, max_nodes);
  const auto& ev = pairs.eigenvalues;
  return Spectrum::from_values(std::span<const double>(ev.data(), ev.size()), kInfinity);
}

double rayleigh(const DiscreteOperator& op, const WeightField& weight, const Eigen::VectorXd& u) {
  const Eigen::VectorXd pu = weight.values().cwiseProduct(u);
  const double denominator = op.inner(u, pu);
  if (!(denominator > 0.0)) {
    throw InvalidArgument("Rayleigh quotient of the zero vector");
  }
  return -op.inner(u, op.apply(u)) / denominator;
}

double residual(const DiscreteOperator& op, const WeightField& weight, double lambda,
                const Eigen::VectorXd& u) {
  const Eigen::VectorXd r = op.apply(u) + lambda * weight.values().cwiseProduct(u);
  return r.norm() / u.norm();
}

Eigen::VectorXd random_trig_field(const GridTorus& grid, std::mt19937_64& rng, double low,
                                  double high, int max_frequency) {
  if (!(high > low)) {
    throw InvalidArgument("random field needs high > low");
  }
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  struct Mode {
    int a, b;
    double c, s;
  };
  std::vector<Mode> modes;
  for (int a = -max_frequency; a <= max_frequency; ++a) {
    for (int b = -max_frequency; b <= max_frequency; ++b) {
      const double c = coeff(rng);
      const double s = coeff(rng);
      modes.push_back({a, b, c, s});
    }
  }
  Eigen::VectorXd field(grid.node_count());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = i * grid.hx();
      const double y = j * grid.hy();
      double v = 0.0;
      for (const auto& m : modes) {
        const double phase = 2.0 * M_PI * (m.a * x / grid.period_x + m.b * y / grid.period_y);
        v += m.c * std::cos(phase) + m.s * std::sin(phase);
      }
      field[grid.index(i, j)] = v;
    }
  }
  const double lo = field.minCoeff();
  const double hi = field.maxCoeff();
  if (!(hi > lo)) {
    return Eigen::VectorXd::Constant(field.size(), low);
  }
  field = ((field.array() - lo) * ((high - low) / (hi - lo)) + low).matrix();
  return field;
}

WeightField random_weight(const GridTorus& grid, std::mt19937_64& rng, double low, double high) {
  if (!(low > 0.0)) {
    throw InvalidArgument("weight lower bound must be positive");
  }
  return WeightField(random_trig_field(grid, rng, low, high));
}

ConvergenceTable convergence_study(double period_x, double period_y,
                                   const std::vector<int>& resolutions, int modes) {
  if (resolutions.empty()) {
    throw InvalidArgument("convergence study needs at least one resolution");
  }
  for (std::size_t i = 1; i < resolutions.size(); ++i) {
    if (resolutions[i] <= resolutions[i - 1]) {
      throw InvalidArgument("resolutions must be strictly increasing");
    }
  }
  if (modes < 1) {
    throw InvalidArgument("convergence study needs at least one mode");
  }

  // Closed-form values and the sorted position of each distinct value.
  const double base = std::pow(2.0 * M_PI / std::max(period_x, period_y), 2);
  double cutoff = base;
  Spectrum exact = flat_torus_spectrum(period_x, period_y, cutoff);
  while (static_cast<int>(exact.size()) < modes) {
    cutoff *= 2.0;
    exact = flat_torus_spectrum(period_x, period_y, cutoff);
  }
  std::vector<double> exact_values;
  std::vector<int> positions;
  int position = 0;
  for (int i = 0; i < modes; ++i) {
    exact_values.push_back(exact.entries()[i].value);
    positions.push_back(position);
    position += exact.entries()[i].multiplicity;
  }

  ConvergenceTable table{period_x, period_y, {}};
  for (int n : resolutions) {
    const auto grid = GridTorus::make(period_x, period_y, n, n);
    if (positions.back() >= grid.node_count()) {
      throw InvalidArgument("resolution too coarse for the requested number of modes");
    }
    const auto pairs = solve_weighted_pairs(build_laplacian(grid),
                                            WeightField::constant(grid.node_count(), 1.0), false);
    ConvergenceRow row;
    row.resolution = n;
    row.exact = exact_values;
    for (int i = 0; i < modes; ++i) {
      const double approx = pairs.eigenvalues[positions[i]];
      const double truth = exact_values[i];
      row.approx.push_back(approx);
      row.error.push_back(truth == 0.0 ? std::abs(approx) : std::abs(approx - truth) / truth);
    }
    row.order.assign(modes, std::nullopt);
    if (!table.rows.empty()) {
      const auto& prev = table.rows.back();
      for (int i = 0; i < modes; ++i) {
        if (exact_values[i] != 0.0 && prev.error[i] > 0.0 && row.error[i] > 0.0) {
          row.order[i] = std::log(prev.error[i] / row.error[i]) /
                         std::log(static_cast<double>(n) / prev.resolution);
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace specgeo
