#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "rotomo/angular_basis.hpp"

namespace rotomo {

QuadratureGrid gauss_legendre_grid(int order) {
  if (order < 1) throw std::domain_error("gauss_legendre_grid: order must be >= 1, got " + std::to_string(order));
  const int n = order;
  QuadratureGrid grid;
  grid.nodes.assign(n, 0.0);
  grid.weights.assign(n, 0.0);

  // Roots of P_n by Newton from the Tricomi-style initial guess; the upper
  // half is mirrored so the rule is exactly symmetric.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Refresh the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    grid.nodes[i] = -z;
    grid.nodes[n - 1 - i] = z;
    grid.weights[i] = w;
    grid.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) grid.nodes[n / 2] = 0.0;
  return grid;
}

const QuadratureGrid& cached_gauss_legendre_grid(int order) {
  static std::shared_mutex mutex;
  static std::unordered_map<int, std::unique_ptr<QuadratureGrid>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(order); it != cache.end()) return *it->second;
  }
  auto grid = std::make_unique<QuadratureGrid>(gauss_legendre_grid(order));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(order, std::move(grid));
  return *it->second;
}

}  // namespace rotomo
