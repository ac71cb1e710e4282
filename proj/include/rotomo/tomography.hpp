#pragma once

// Inversion of Pr(x, t) into a fixed-(k, m) density block.
//
// Index conventions: an element rho(J1, J2) is addressed either directly or
// through the sum/difference pair (J, dJ) = (J1 + J2, J1 - J2). A moment
// integral I(alpha, beta) probes Legendre order alpha at the Bohr frequency
// of the pair (alpha, beta); for the rigid rotor that frequency is
// omega * beta * (alpha + 1).

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rotomo/rotor_model.hpp"

namespace rotomo {

class SamplingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MomentValue {
  int alpha = 0;
  int beta = 0;
  std::complex<double> value;
};

struct ChainMember {
  int J = 0;
  int dJ = 0;
  int j1() const noexcept { return (J + dJ) / 2; }
  int j2() const noexcept { return (J - dJ) / 2; }
  bool operator==(const ChainMember&) const = default;
  auto operator<=>(const ChainMember&) const = default;
};

// Pairs sharing one probe frequency, ordered by strictly decreasing |dJ|.
struct DegeneracyChain {
  long target = 0;         // beta (alpha + 1)
  double frequency = 0.0;  // probe frequency (centrifugal chains only)
  std::vector<ChainMember> members;
};

// All (J, dJ) with dJ (J + 1) = beta (alpha + 1), J of the parity of alpha
// (dropped when same_parity is false), |dJ| <= |beta| with the sign of beta,
// (J - |dJ|) / 2 >= j_min and J <= j_search_cap. Enumerates the divisors of
// the target.
DegeneracyChain degeneracy_set(int alpha, int beta, int j_min, int j_search_cap, bool same_parity = true);

// Centrifugal variant: same selection rules (including |dJ| <= alpha <= J),
// but membership is |omega(J, dJ) - omega(alpha, beta)| <= freq_tolerance
// with omega the exact Bohr frequency of the pair.
DegeneracyChain degeneracy_set_cd(int alpha, int beta, int j_min, int j_search_cap, const RotorSpec& spec,
                                  double freq_tolerance);

// Bohr frequency E_{J1} - E_{J2} of the pair behind (alpha, beta).
double probe_frequency(const RotorSpec& spec, int alpha, int beta);

// Fourier resolution 2 pi / (n_periods T) of an observation window.
double frequency_resolution(const MeasurementGrid& grid);

// Time-Fourier / Legendre projections of one data set. Projections onto
// P^0_alpha are cached per alpha.
class MomentEngine {
 public:
  explicit MomentEngine(const MeasurementGrid& grid);

  // (1 / N_t) sum_i exp(i omega t_i) sum_j w_j P^0_alpha(x_j) Pr(x_j, t_i).
  std::complex<double> moment(int alpha, double omega);

  // The projection sum_j w_j P^0_alpha(x_j) Pr(x_j, t_i) for every t_i.
  const std::vector<double>& projection(int alpha);

  const MeasurementGrid& grid() const noexcept { return grid_; }

 private:
  const MeasurementGrid& grid_;
  std::map<int, std::vector<double>> projections_;
};

MomentValue moment_integral(const MeasurementGrid& grid, int alpha, int beta, const RotorSpec& spec);

struct ReconstructOptions {
  int j_search_cap = 0;          // 0: enumerated bound from required_search_cap
  double freq_tolerance = -1.0;  // < 0: frequency_resolution(grid); centrifugal only
  bool project_psd = false;      // clip negative eigenvalues after the solve
};

struct ElementDiagnostics {
  int j1 = 0;
  int j2 = 0;
  std::complex<double> value;
  std::vector<ChainMember> chain;
  bool truncated = false;              // "contaminated-by-truncation"
  std::vector<ChainMember> neglected;  // chain members beyond the search cap
};

struct OffDiagonalResult {
  DensityBlock block;  // diagonal left at zero
  std::vector<ElementDiagnostics> elements;
};

// Back substitution along every chain, deepest member first.
OffDiagonalResult reconstruct_offdiag(const MeasurementGrid& grid, const RotorSpec& spec, int j_max,
                                      const ReconstructOptions& options = {});

// Upper-triangular solve of I(alpha, 0) = sum_J1 M(alpha, J1) rho(J1, J1).
std::vector<double> reconstruct_diag(const MeasurementGrid& grid, const RotorSpec& spec, int j_max);

// M(a, j) = C^{km}_{2 (j_min + j), 0, 2 (j_min + a)}, upper triangular.
Eigen::MatrixXd diagonal_system_matrix(BasisKind basis, int k, int m, int j_cap);

enum class PatternMethod { triangular, cramer };

struct PatternFunction {
  int j1 = 0;
  int k = 0;
  int m = 0;
  BasisKind basis = BasisKind::legendre;
  std::map<int, double> coeffs;  // J -> f_{J1, J}, J = j1 ... j_cap

  // F_{J1}(x) = sum_J f_{J1,J} P^0_{2J}(x)
  double operator()(double x) const;
};

PatternFunction pattern_function(int j1, int k, int m, int j_cap, BasisKind basis,
                                 PatternMethod method = PatternMethod::triangular);
PatternFunction pattern_function(int j1, int k, int m, int j_cap);

// (1 / N_t) sum_i sum_j w_j F(x_j) Pr(x_j, t_i): the diagonal element rho(J1, J1).
double apply_pattern(const MeasurementGrid& grid, const PatternFunction& pattern);

struct Reconstruction {
  DensityBlock block;
  std::vector<ElementDiagnostics> elements;
  SamplingPlan plan;
  double residual = 0.0;        // max |resimulated - data| over the grid
  double condition = 1.0;       // condition number of the centrifugal system (1 for rigid)
  std::string method;           // "chain-back-substitution" or "leakage-corrected-system"
};

Reconstruction reconstruct_block(const MeasurementGrid& grid, const RotorSpec& spec, int j_max,
                                 const ReconstructOptions& options = {});

// Sampling plan a grid must meet for reconstruction up to j_max; throws
// SamplingError naming the required n_t / n_x.
SamplingPlan check_sampling(const MeasurementGrid& grid, const RotorSpec& spec, int j_max, int j_search_cap);

// Plain-text report: summary, then one line per element with chain and flags.
std::string format_report(const Reconstruction& rec);

}  // namespace rotomo
