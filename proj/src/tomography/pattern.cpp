#include <cmath>

#include <Eigen/LU>

#include "rotomo/tomography.hpp"

namespace rotomo {

double PatternFunction::operator()(double x) const {
  if (coeffs.empty()) return 0.0;
  const int top = 2 * coeffs.rbegin()->first;
  const std::vector<double> p = assoc_legendre_norm_column(top, 0, x);
  double acc = 0.0;
  for (const auto& [J, f] : coeffs) acc += f * p[2 * J];
  return acc;
}

PatternFunction pattern_function(int j1, int k, int m, int j_cap, BasisKind basis, PatternMethod method) {
  const int j0 = lowest_j(k, m);
  if (j1 < j0 || j1 > j_cap) throw std::invalid_argument("pattern_function: need M_km <= j1 <= j_cap");
  const Eigen::MatrixXd system = diagonal_system_matrix(basis, k, m, j_cap);
  const int d = static_cast<int>(system.rows());
  const int i = j1 - j0;

  PatternFunction pattern{j1, k, m, basis, {}};
  if (method == PatternMethod::triangular) {
    // Row i of the inverse: solve system^T y = e_i by forward substitution.
    std::vector<double> y(d, 0.0);
    for (int j = i; j < d; ++j) {
      double acc = (j == i) ? 1.0 : 0.0;
      for (int l = i; l < j; ++l) acc -= system(l, j) * y[l];
      y[j] = acc / system(j, j);
    }
    for (int j = i; j < d; ++j) pattern.coeffs[j0 + j] = y[j];
  } else {
    // Cofactor expansion of the triangular inverse:
    //   f_{i,j} = (-1)^{i+j} det(M[i .. j-1, i+1 .. j]) / prod_{g=i}^{j} M(g, g)
    double diag_product = 1.0;
    for (int j = i; j < d; ++j) {
      diag_product *= system(j, j);
      const int size = j - i;
      const double minor = size == 0 ? 1.0 : system.block(i, i + 1, size, size).partialPivLu().determinant();
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      pattern.coeffs[j0 + j] = sign * minor / diag_product;
    }
  }
  return pattern;
}

PatternFunction pattern_function(int j1, int k, int m, int j_cap) {
  return pattern_function(j1, k, m, j_cap, default_basis(k));
}

double apply_pattern(const MeasurementGrid& grid, const PatternFunction& pattern) {
  if (grid.k != pattern.k || grid.m != pattern.m) throw std::invalid_argument("apply_pattern: (k, m) mismatch");
  const int nx = grid.n_x();
  std::vector<double> weighted(nx);
  for (int j = 0; j < nx; ++j) weighted[j] = grid.x_grid.weights[j] * pattern(grid.x_grid.nodes[j]);
  double acc = 0.0;
  for (int it = 0; it < grid.n_t; ++it) {
    for (int j = 0; j < nx; ++j) acc += weighted[j] * grid.at(it, j);
  }
  return acc / grid.n_t;
}

}  // namespace rotomo
