#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotomo/kernels.hpp"
#include "rotomo/rotor_model.hpp"

namespace rotomo {

MeasurementGrid simulate_pr(const DensityBlock& block, const RotorSpec& spec, const QuadratureGrid& x_grid, int n_t,
                            int n_periods, SimulationStats* stats) {
  if (block.k() != spec.k || block.m() != spec.m) throw std::invalid_argument("simulate_pr: block and spec disagree on (k, m)");
  validate(spec, 0);
  if (x_grid.order() < 2 * block.j_max() + 1) {
    throw std::invalid_argument("simulate_pr: x grid order " + std::to_string(x_grid.order()) + " below 2 j_max + 1 = " +
                                std::to_string(2 * block.j_max() + 1) + " (x aliasing)");
  }
  if (n_t < 1 || n_periods < 1) throw std::invalid_argument("simulate_pr: n_t and n_periods must be >= 1");

  MeasurementGrid grid;
  grid.omega = spec.omega;
  grid.kind = spec.kind;
  grid.k = spec.k;
  grid.m = spec.m;
  grid.x_grid = x_grid;
  grid.n_t = n_t;
  grid.n_periods = n_periods;
  grid.period = observation_period(spec);
  grid.values.assign(static_cast<std::size_t>(n_t) * x_grid.order(), 0.0);

  const int nx = x_grid.order();
  const int j0 = block.j_min();
  const int d = block.dim();
  const BasisKind basis = spec.basis();

  // f_J(x_j) laid out [J][x].
  std::vector<double> f(static_cast<std::size_t>(d) * nx);
  for (int j = 0; j < nx; ++j) {
    const std::vector<double> col = eigenfunction_column(basis, block.j_max(), spec.k, spec.m, x_grid.nodes[j]);
    for (int a = 0; a < d; ++a) f[static_cast<std::size_t>(a) * nx + j] = col[a];
  }

  struct Pair {
    int a, b;
    double freq;
    std::vector<double> product;
  };
  std::vector<Pair> pairs;
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      if (block.matrix()(a, b) == 0.0 && block.matrix()(b, a) == 0.0) continue;
      Pair p{a, b, bohr_frequency(spec, j0 + a, j0 + b), std::vector<double>(nx)};
      kernels::hadamard({f.data() + static_cast<std::size_t>(a) * nx, static_cast<std::size_t>(nx)},
                        {f.data() + static_cast<std::size_t>(b) * nx, static_cast<std::size_t>(nx)}, p.product);
      pairs.push_back(std::move(p));
    }
  }

  const double dt = grid.dt();
  std::vector<double> imag_row(nx);
  double max_imag = 0.0;
  for (int it = 0; it < n_t; ++it) {
    const double t = it * dt;
    std::span<double> row(grid.values.data() + static_cast<std::size_t>(it) * nx, nx);
    std::fill(imag_row.begin(), imag_row.end(), 0.0);
    for (const Pair& p : pairs) {
      if (p.a == p.b) {
        const std::complex<double> rho = block.matrix()(p.a, p.a);
        kernels::axpy(rho.real(), p.product, row);
        kernels::axpy(rho.imag(), p.product, imag_row);
        continue;
      }
      const std::complex<double> phase = std::polar(1.0, -p.freq * t);
      const std::complex<double> upper = block.matrix()(p.a, p.b) * phase;
      const std::complex<double> lower = block.matrix()(p.b, p.a) * std::conj(phase);
      const std::complex<double> sum = upper + lower;
      kernels::axpy(sum.real(), p.product, row);
      kernels::axpy(sum.imag(), p.product, imag_row);
    }
    for (double v : imag_row) max_imag = std::max(max_imag, std::abs(v));
  }
  if (max_imag >= 1e-12) {
    throw std::runtime_error("simulate_pr: imaginary residue " + std::to_string(max_imag) + " exceeds 1e-12");
  }
  if (stats != nullptr) stats->max_imag_residue = max_imag;
  return grid;
}

MeasurementGrid simulate_pr(const DensityBlock& block, const RotorSpec& spec, const SamplingPlan& plan,
                            SimulationStats* stats) {
  return simulate_pr(block, spec, cached_gauss_legendre_grid(plan.n_x), plan.n_t, plan.n_periods, stats);
}

}  // namespace rotomo
