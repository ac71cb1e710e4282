#include <cmath>
#include <numbers>
#include <string>

#include "rotomo/kernels.hpp"
#include "rotomo/tomography.hpp"

namespace rotomo {

double frequency_resolution(const MeasurementGrid& grid) {
  return 2.0 * std::numbers::pi / (grid.n_periods * grid.period);
}

MomentEngine::MomentEngine(const MeasurementGrid& grid) : grid_(grid) {}

const std::vector<double>& MomentEngine::projection(int alpha) {
  if (auto it = projections_.find(alpha); it != projections_.end()) return it->second;
  const int nx = grid_.n_x();
  std::vector<double> weighted(nx);
  for (int j = 0; j < nx; ++j) {
    weighted[j] = grid_.x_grid.weights[j] * assoc_legendre_norm_column(alpha, 0, grid_.x_grid.nodes[j])[alpha];
  }
  std::vector<double> g(grid_.n_t);
  for (int i = 0; i < grid_.n_t; ++i) g[i] = kernels::dot(weighted, {grid_.row(i), static_cast<std::size_t>(nx)});
  return projections_.emplace(alpha, std::move(g)).first->second;
}

std::complex<double> MomentEngine::moment(int alpha, double omega) {
  const std::vector<double>& g = projection(alpha);
  const int n = grid_.n_t;
  const double dt = grid_.dt();
  std::vector<double> c(n), s(n);
  for (int i = 0; i < n; ++i) {
    const double phase = omega * (i * dt);
    c[i] = std::cos(phase);
    s[i] = std::sin(phase);
  }
  double re = 0.0, im = 0.0;
  kernels::active().dot2(c.data(), s.data(), g.data(), static_cast<std::size_t>(n), &re, &im);
  return {re / n, im / n};
}

MomentValue moment_integral(const MeasurementGrid& grid, int alpha, int beta, const RotorSpec& spec) {
  if (alpha < 0 || std::abs(beta) > alpha || (alpha - beta) % 2 != 0) {
    throw std::invalid_argument("moment_integral: need |beta| <= alpha and beta = alpha (mod 2)");
  }
  if (alpha < spec.j_min()) throw std::invalid_argument("moment_integral: alpha below M_km");
  const double omega = probe_frequency(spec, alpha, beta);
  if (!(std::abs(omega) * grid.dt() < std::numbers::pi)) {
    throw SamplingError("moment_integral: probe frequency " + std::to_string(omega) +
                        " is above the time Nyquist limit; increase n_t");
  }
  if (alpha > 2 * grid.n_x() - 1) {
    throw SamplingError("moment_integral: Legendre order " + std::to_string(alpha) + " not resolved by n_x = " +
                        std::to_string(grid.n_x()));
  }
  MomentEngine engine(grid);
  return {alpha, beta, engine.moment(alpha, omega)};
}

}  // namespace rotomo
