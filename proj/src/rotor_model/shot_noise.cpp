#include <algorithm>
#include <random>
#include <stdexcept>

#include "rotomo/rotor_model.hpp"

namespace rotomo {

MeasurementGrid add_shot_noise(const MeasurementGrid& grid, std::int64_t samples_per_time, std::uint64_t seed) {
  if (samples_per_time <= 0) throw std::domain_error("add_shot_noise: samples_per_time must be positive");
  MeasurementGrid out = grid;
  std::mt19937_64 rng(seed);
  const int nx = grid.n_x();
  std::vector<double> mass(nx);
  for (int it = 0; it < grid.n_t; ++it) {
    double total = 0.0;
    for (int j = 0; j < nx; ++j) {
      mass[j] = grid.x_grid.weights[j] * std::max(0.0, grid.at(it, j));
      total += mass[j];
    }
    if (!(total > 0.0)) {
      for (int j = 0; j < nx; ++j) out.at(it, j) = 0.0;
      continue;
    }
    // Multinomial draw as a chain of conditional binomials.
    std::int64_t remaining = samples_per_time;
    double remaining_mass = total;
    for (int j = 0; j < nx; ++j) {
      std::int64_t count = 0;
      if (j == nx - 1) {
        count = remaining;
      } else if (remaining > 0 && mass[j] > 0.0) {
        const double p = std::clamp(mass[j] / remaining_mass, 0.0, 1.0);
        count = std::binomial_distribution<std::int64_t>(remaining, p)(rng);
      }
      remaining -= count;
      remaining_mass -= mass[j];
      out.at(it, j) = total * static_cast<double>(count) / (static_cast<double>(samples_per_time) * grid.x_grid.weights[j]);
    }
  }
  return out;
}

}  // namespace rotomo
