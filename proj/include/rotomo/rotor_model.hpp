#pragma once

// Rotor Hamiltonians, density-matrix blocks at fixed (k, m), and the forward
// model Pr(x, t) = sum_{J1,J2} rho(J1,J2) f_{J1}(x) f_{J2}(x) exp(-i (E_J1 - E_J2) t).
//
// Units: hbar = 1. `omega` carries the energy scale, so E_J = omega J (J + 1)
// for the rigid rotor and the revival period is T = pi / omega.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rotomo/angular_basis.hpp"

namespace rotomo {

enum class RotorKind { rigid_linear, centrifugal_linear, symmetric_top };

std::string_view to_string(RotorKind kind) noexcept;
RotorKind parse_rotor_kind(std::string_view text);

struct RotorSpec {
  RotorKind kind = RotorKind::rigid_linear;
  double omega = 1.0;   // Omega (Omega_1 for the symmetric top)
  double omega2 = 0.0;  // Omega_2, symmetric top only
  double d_cd = 0.0;    // centrifugal constant D, same units as omega
  int k = 0;
  int m = 0;

  BasisKind basis() const noexcept {
    return kind == RotorKind::symmetric_top ? BasisKind::wigner : BasisKind::legendre;
  }
  int j_min() const noexcept { return lowest_j(k, m); }
};

// Throws std::invalid_argument on inconsistent parameters. `j_cap` is the
// largest J the caller will model; it feeds the centrifugal monotonicity guard
// d_cd / omega < 1 / (2 j_cap (j_cap + 1)).
void validate(const RotorSpec& spec, int j_cap);

// E_J / hbar.
double energy(const RotorSpec& spec, int J);

// E_J1 - E_J2.
double bohr_frequency(const RotorSpec& spec, int J1, int J2);

// Exact revival period pi / omega. Throws std::domain_error for the
// centrifugal rotor, whose spectrum has no common period.
double revival_period(const RotorSpec& spec);

// Period used to lay out observation windows: pi / omega for every kind.
double observation_period(const RotorSpec& spec) noexcept;

// Fixed-(k, m) block rho(J1, J2), j_min <= J1, J2 <= j_max. Construction
// checks Hermiticity within 1e-12 and stores the exactly Hermitian part.
class DensityBlock {
 public:
  DensityBlock(int k, int m, int j_max);
  DensityBlock(int k, int m, int j_max, Eigen::MatrixXcd elements);

  int k() const noexcept { return k_; }
  int m() const noexcept { return m_; }
  int j_min() const noexcept { return j_min_; }
  int j_max() const noexcept { return j_max_; }
  int dim() const noexcept { return j_max_ - j_min_ + 1; }

  std::complex<double> operator()(int J1, int J2) const { return elements_(J1 - j_min_, J2 - j_min_); }
  // Sets rho(J1, J2) and rho(J2, J1) = conj(value).
  void set(int J1, int J2, std::complex<double> value);

  const Eigen::MatrixXcd& matrix() const noexcept { return elements_; }
  std::complex<double> trace() const { return elements_.trace(); }

  bool is_psd(double tol = 1e-12) const;
  // Eigenvalue clipping followed by trace renormalization to the original trace.
  DensityBlock projected_psd() const;

  // Same state expressed with a different upper J (zero padding or cut).
  DensityBlock resized(int j_max) const;

  // max |rho_a(J1,J2) - rho_b(J1,J2)| over the union of both index ranges.
  static double max_abs_difference(const DensityBlock& a, const DensityBlock& b);

 private:
  int k_;
  int m_;
  int j_min_;
  int j_max_;
  Eigen::MatrixXcd elements_;
};

// Pr(x_j, t_i) on a Gauss-Legendre x grid times a uniform time grid
// t_i = i dt, i = 0 ... n_t - 1, with n_t dt = n_periods * period.
struct MeasurementGrid {
  double omega = 1.0;
  RotorKind kind = RotorKind::rigid_linear;
  int k = 0;
  int m = 0;

  QuadratureGrid x_grid;
  int n_t = 0;
  int n_periods = 1;
  double period = 0.0;
  std::vector<double> values;  // row-major [t][x]

  int n_x() const noexcept { return x_grid.order(); }
  double dt() const noexcept { return n_periods * period / n_t; }
  double time(int i) const noexcept { return i * dt(); }
  double& at(int it, int ix) { return values[static_cast<std::size_t>(it) * n_x() + ix]; }
  double at(int it, int ix) const { return values[static_cast<std::size_t>(it) * n_x() + ix]; }
  const double* row(int it) const { return values.data() + static_cast<std::size_t>(it) * n_x(); }

  // Quadrature integral of Pr(., t_i).
  double integral(int it) const;
};

// Sampling layout. n_t counts samples over the whole window n_periods * T.
struct SamplingPlan {
  int n_t = 0;
  int n_x = 0;
  int n_periods = 1;
  int j_search_cap = 0;
};

// Largest J = J1 + J2 reached by any degeneracy chain of an off-diagonal
// element with j_min <= J2 < J1 <= j_max, found by enumeration. Never below
// 2 * j_max.
int required_search_cap(int j_max, int j_min, bool same_parity = true);

// Minimal sampling for a block up to j_max:
//   n_t >= n_periods * (2 h_max + 1), h_max = j_max (j_max + 1) / 2
//   n_x >= max(2 j_max + 1, ceil((j_search_cap + 2 j_max + 1) / 2))
// Zero fields in `requested` are filled automatically; non-zero fields are
// validated and std::invalid_argument names the violated bound.
SamplingPlan plan_sampling(const RotorSpec& spec, int j_max, SamplingPlan requested);

// Human-readable list of violated sampling conditions; empty when the grid
// satisfies `required`.
std::string sampling_violations(const MeasurementGrid& grid, const SamplingPlan& required);

struct SimulationStats {
  double max_imag_residue = 0.0;
};

MeasurementGrid simulate_pr(const DensityBlock& block, const RotorSpec& spec, const QuadratureGrid& x_grid, int n_t,
                            int n_periods, SimulationStats* stats = nullptr);

// Convenience: simulate with the grid sizes from a plan.
MeasurementGrid simulate_pr(const DensityBlock& block, const RotorSpec& spec, const SamplingPlan& plan,
                            SimulationStats* stats = nullptr);

enum class StateKind { random_pure, random_mixed, cos2_kicked };
StateKind parse_state_kind(std::string_view text);

// Test-state generator. cos2_kicked applies exp(i P x^2) to |M_km> in a
// working basis of 2 * j_max + 8 and truncates to j_max with renormalization.
DensityBlock make_test_state(StateKind kind, int k, int m, int j_max, std::uint64_t seed, double kick_strength = 0.0,
                             BasisKind basis = BasisKind::legendre);

// Multinomial fragment counts on the quadrature nodes at every time slice,
// p_j proportional to w_j Pr(x_j, t_i), turned back into a density estimate
// Pr_hat(x_j) = trace n_j / (N w_j) whose quadrature integral is the trace.
MeasurementGrid add_shot_noise(const MeasurementGrid& grid, std::int64_t samples_per_time, std::uint64_t seed);

// <cos^2 theta>(t_i) = integral x^2 Pr(x, t_i) dx.
std::vector<double> alignment_trace(const MeasurementGrid& grid);

}  // namespace rotomo
