#include <cstdlib>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>

#include "rotomo/angular_basis.hpp"

namespace rotomo {
namespace {

struct ProductKey {
  BasisKind basis;
  int k, m, j1, j2;  // j1 >= j2
  bool operator==(const ProductKey&) const = default;
};

struct ProductKeyHash {
  std::size_t operator()(const ProductKey& key) const noexcept {
    std::size_t h = static_cast<std::size_t>(key.basis);
    for (int v : {key.k, key.m, key.j1, key.j2}) h = h * 1000003u ^ static_cast<std::size_t>(v + 512);
    return h;
  }
};

// c_L for L = 0 ... j1 + j2, zero where the selection rules forbid.
std::vector<double> project_product(BasisKind basis, int k, int m, int j1, int j2) {
  const int l_max = j1 + j2;
  const QuadratureGrid& grid = cached_gauss_legendre_grid(l_max + 1);
  const int j0 = lowest_j(k, m);
  std::vector<double> c(l_max + 1, 0.0);
  for (int i = 0; i < grid.order(); ++i) {
    const double x = grid.nodes[i];
    const std::vector<double> f = eigenfunction_column(basis, j1, k, m, x);
    const std::vector<double> p = assoc_legendre_norm_column(l_max, 0, x);
    const double prod = grid.weights[i] * f[j1 - j0] * f[j2 - j0];
    for (int L = 0; L <= l_max; ++L) c[L] += prod * p[L];
  }
  const int l_lo = std::abs(j1 - j2);
  const bool parity = parity_selection(k, m);
  for (int L = 0; L <= l_max; ++L) {
    if (L < l_lo || (parity && (L + l_max) % 2 != 0)) c[L] = 0.0;
  }
  return c;
}

std::shared_ptr<const std::vector<double>> memoized_product(BasisKind basis, int k, int m, int j1, int j2) {
  if (basis == BasisKind::legendre && k != 0) throw std::domain_error("product_decomp: legendre basis requires k = 0");
  const int j0 = lowest_j(k, m);
  if (j1 < j0 || j2 < j0) {
    throw std::domain_error("product_decomp: J below M_km = " + std::to_string(j0));
  }
  if (j1 > kMaxAngularMomentum || j2 > kMaxAngularMomentum) {
    throw std::domain_error("product_decomp: J above supported cap");
  }
  if (j1 < j2) std::swap(j1, j2);

  static std::shared_mutex mutex;
  static std::unordered_map<ProductKey, std::shared_ptr<const std::vector<double>>, ProductKeyHash> memo;
  const ProductKey key{basis, k, m, j1, j2};
  {
    std::shared_lock lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  auto value = std::make_shared<const std::vector<double>>(project_product(basis, k, m, j1, j2));
  std::unique_lock lock(mutex);
  auto [it, inserted] = memo.try_emplace(key, std::move(value));
  return it->second;
}

}  // namespace

std::vector<std::pair<int, double>> product_decomp(BasisKind basis, int J1, int J2, int k, int m) {
  const auto coeffs = memoized_product(basis, k, m, J1, J2);
  std::vector<std::pair<int, double>> out;
  const int l_max = J1 + J2;
  const int step = parity_selection(k, m) ? 2 : 1;
  for (int L = std::abs(J1 - J2); L <= l_max; L += step) out.emplace_back(L, (*coeffs)[L]);
  return out;
}

std::vector<std::pair<int, double>> product_decomp(int J1, int J2, int k, int m) {
  return product_decomp(default_basis(k), J1, J2, k, m);
}

double product_coefficient(BasisKind basis, int k, int m, int J, int dJ, int L) {
  if (J < 0 || std::abs(dJ) > J || (J + dJ) % 2 != 0) return 0.0;
  if (L < std::abs(dJ) || L > J) return 0.0;
  if (parity_selection(k, m) && (L + J) % 2 != 0) return 0.0;
  const int j1 = (J + dJ) / 2;
  const int j2 = (J - dJ) / 2;
  if (std::min(j1, j2) < lowest_j(k, m)) return 0.0;
  return (*memoized_product(basis, k, m, j1, j2))[L];
}

CoefficientTable coefficient_table(BasisKind basis, int k, int m, int j_lo, int j_hi) {
  if (j_lo < 0 || j_hi < j_lo) throw std::invalid_argument("coefficient_table: malformed J range");
  CoefficientTable table{basis, k, m, {}};
  const int j0 = lowest_j(k, m);
  for (int J = std::max(j_lo, 2 * j0); J <= j_hi; ++J) {
    for (int dJ = -(J - 2 * j0); dJ <= J - 2 * j0; dJ += 2) {
      for (int L = std::abs(dJ); L <= J; L += parity_selection(k, m) ? 2 : 1) {
        table.entries[{J, dJ, L}] = product_coefficient(basis, k, m, J, dJ, L);
      }
    }
  }
  return table;
}

}  // namespace rotomo
