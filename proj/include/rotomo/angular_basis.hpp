#pragma once

// Special functions and quadrature on x = cos(theta) in [-1, 1].
//
// Conventions
//   * assoc_legendre_norm(J, m, x) is orthonormal on [-1, 1] and carries the
//     Condon-Shortley phase; negative m uses P^{-m}_J = (-1)^m P^m_J.
//   * wigner_d(J, k, m, x) is d^J_{k m}(beta) = <J k| exp(-i beta J_y) |J m>
//     with x = cos(beta), so d^J_{00}(x) = P_J(x) and d^1_{11}(x) = (1 + x) / 2.
//   * The rotor eigenfunction used everywhere downstream is
//       f_J(x) = assoc_legendre_norm(J, m, x)                  (linear rotor)
//       f_J(x) = sqrt((2J + 1) / 2) * wigner_d(J, k, m, x)     (symmetric top)
//     Only products f_{J1} f_{J2} at equal (k, m) ever enter a distribution,
//     so the phase conventions above cancel.

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace rotomo {

// Largest angular momentum any routine accepts.
inline constexpr int kMaxAngularMomentum = 200;

struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const noexcept { return static_cast<int>(nodes.size()); }
};

// Gauss-Legendre rule with `order` nodes; exact for polynomials of degree
// 2 * order - 1. Throws std::domain_error for order < 1.
QuadratureGrid gauss_legendre_grid(int order);

// Memoized, thread-safe variant.
const QuadratureGrid& cached_gauss_legendre_grid(int order);

// Un-normalized Legendre polynomial P_J(x).
double legendre_p(int J, double x);

double assoc_legendre_norm(int J, int m, double x);

// Values for J = |m| ... j_max (index J - |m|). One recurrence pass.
std::vector<double> assoc_legendre_norm_column(int j_max, int m, double x);

double wigner_d(int J, int k, int m, double x);

// Values for J = max(|k|, |m|) ... j_max.
std::vector<double> wigner_d_column(int j_max, int k, int m, double x);

// <j1 m1 j2 m2 | j3 m3>. Zero for triangle or projection violations.
double clebsch_gordan(int j1, int j2, int j3, int m1, int m2, int m3);

// ln(n!) for 0 <= n <= 4 * kMaxAngularMomentum + 1, from a precomputed table.
double log_factorial(int n);

enum class BasisKind { legendre, wigner };

// M_{km} = max(|k|, |m|): the lowest J present in a (k, m) block.
inline int lowest_j(int k, int m) noexcept { return std::max(k < 0 ? -k : k, m < 0 ? -m : m); }

// f_J(x) in the chosen basis; legendre requires k == 0.
double eigenfunction(BasisKind basis, int J, int k, int m, double x);

// Values f_J(x) for J = M_{km} ... j_max.
std::vector<double> eigenfunction_column(BasisKind basis, int j_max, int k, int m, double x);

// The default basis: legendre when k == 0, wigner otherwise.
inline BasisKind default_basis(int k) noexcept { return k == 0 ? BasisKind::legendre : BasisKind::wigner; }

// True when products f_{J1} f_{J2} only carry L = J1 + J2 (mod 2). That holds
// whenever k or m vanishes; a block with both non-zero mixes both parities.
inline bool parity_selection(int k, int m) noexcept { return k == 0 || m == 0; }

// Coefficients c_L of f_{J1}(x) f_{J2}(x) = sum_L c_L P^0_L(x), obtained by
// Gauss-Legendre projection. L runs over |J1-J2| ... J1+J2, restricted to
// L = J1+J2 (mod 2) when parity_selection(k, m). Memoized; safe to call concurrently.
std::vector<std::pair<int, double>> product_decomp(int J1, int J2, int k, int m);
std::vector<std::pair<int, double>> product_decomp(BasisKind basis, int J1, int J2, int k, int m);

// C^{km}_{J, dJ, L} with J = J1 + J2 and dJ = J1 - J2. Zero outside the
// selection rules (including parity where it applies). Memoized through product_decomp.
double product_coefficient(BasisKind basis, int k, int m, int J, int dJ, int L);

// Snapshot of memoized coefficients for inspection and dumps.
struct CoefficientTable {
  BasisKind basis = BasisKind::legendre;
  int k = 0;
  int m = 0;
  // (J, dJ, L) -> C^{km}_{J,dJ,L}
  std::map<std::tuple<int, int, int>, double> entries;
};

// All admissible entries with j_lo <= J <= j_hi (J is the sum J1 + J2).
CoefficientTable coefficient_table(BasisKind basis, int k, int m, int j_lo, int j_hi);

}  // namespace rotomo
