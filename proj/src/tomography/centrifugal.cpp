// With centrifugal distortion the Bohr frequencies are no longer integer
// multiples of 2 omega, so a finite window leaks every component into every
// probe. The leakage is a known linear map: for uniform samples t_i the probe
// at omega_p sees a component at omega_v through
//   K(nu) = (1 / N) sum_i exp(i nu t_i),  nu = omega_p -/+ omega_v.
// Stacking one probe per unknown gives a square real system. On a Nyquist
// grid of a rigid spectrum K is a Kronecker delta and the system collapses to
// the chain back substitution.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <unordered_map>

#include <Eigen/SVD>

#include "internal.hpp"

namespace rotomo::detail {
namespace {

class WindowKernel {
 public:
  explicit WindowKernel(const MeasurementGrid& grid) : n_(grid.n_t), dt_(grid.dt()) {}

  std::complex<double> operator()(double nu) {
    if (auto it = cache_.find(nu); it != cache_.end()) return it->second;
    double re = 0.0, im = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double phase = nu * (i * dt_);
      re += std::cos(phase);
      im += std::sin(phase);
    }
    const std::complex<double> value(re / n_, im / n_);
    cache_.emplace(nu, value);
    return value;
  }

 private:
  int n_;
  double dt_;
  std::unordered_map<double, std::complex<double>> cache_;
};

}  // namespace

SystemSolution solve_leakage_corrected(const MeasurementGrid& grid, const RotorSpec& spec, int j_max,
                                       const SamplingPlan& plan, const ReconstructOptions& options) {
  const int j0 = spec.j_min();
  const int cap = plan.j_search_cap;
  const BasisKind basis = spec.basis();
  const double tol = options.freq_tolerance >= 0.0 ? options.freq_tolerance : frequency_resolution(grid);

  // Unknown off-diagonal pairs: every element of the block plus the closure
  // of their near-degenerate partners up to the search cap.
  std::vector<ChainMember> unknowns;
  std::map<ChainMember, int> index;
  std::deque<ChainMember> pending;
  auto add = [&](const ChainMember& member) {
    if (index.try_emplace(member, static_cast<int>(unknowns.size())).second) {
      unknowns.push_back(member);
      pending.push_back(member);
    }
  };
  for (int j1 = j0 + 1; j1 <= j_max; ++j1) {
    for (int j2 = j0; j2 < j1; ++j2) add({j1 + j2, j1 - j2});
  }
  std::map<ChainMember, DegeneracyChain> chains;
  while (!pending.empty()) {
    const ChainMember member = pending.front();
    pending.pop_front();
    DegeneracyChain chain = degeneracy_set_cd(member.J, member.dJ, j0, cap, spec, tol);
    for (const ChainMember& partner : chain.members) add(partner);
    chains.emplace(member, std::move(chain));
  }

  const int n_off = static_cast<int>(unknowns.size());
  const int n_diag = j_max - j0 + 1;
  const int n = 2 * n_off + n_diag;

  std::vector<double> freq(n_off);
  for (int v = 0; v < n_off; ++v) freq[v] = probe_frequency(spec, unknowns[v].J, unknowns[v].dJ);

  MomentEngine engine(grid);
  WindowKernel kernel(grid);
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs(n);

  auto fill_probe = [&](int alpha, double omega, int row_re, int row_im) {
    const std::complex<double> measured = engine.moment(alpha, omega);
    rhs(row_re) = measured.real();
    if (row_im >= 0) rhs(row_im) = measured.imag();
    for (int v = 0; v < n_off; ++v) {
      const double c = product_coefficient(basis, spec.k, spec.m, unknowns[v].J, unknowns[v].dJ, alpha);
      if (c == 0.0) continue;
      const std::complex<double> k1 = kernel(omega - freq[v]);
      const std::complex<double> k2 = kernel(omega + freq[v]);
      const std::complex<double> sum = k1 + k2;
      const std::complex<double> diff = k1 - k2;
      system(row_re, 2 * v) += c * sum.real();
      system(row_re, 2 * v + 1) -= c * diff.imag();
      if (row_im >= 0) {
        system(row_im, 2 * v) += c * sum.imag();
        system(row_im, 2 * v + 1) += c * diff.real();
      }
    }
    const std::complex<double> k0 = kernel(omega);
    for (int d = 0; d < n_diag; ++d) {
      const double c = product_coefficient(basis, spec.k, spec.m, 2 * (j0 + d), 0, alpha);
      if (c == 0.0) continue;
      system(row_re, 2 * n_off + d) += c * k0.real();
      if (row_im >= 0) system(row_im, 2 * n_off + d) += c * k0.imag();
    }
  };

  for (int p = 0; p < n_off; ++p) fill_probe(unknowns[p].J, freq[p], 2 * p, 2 * p + 1);
  for (int a = 0; a < n_diag; ++a) fill_probe(2 * (j0 + a), 0.0, 2 * n_off + a, -1);

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv(n - 1) > 1e-13 * sv(0))) {
    throw std::runtime_error("centrifugal reconstruction: moment system is singular; lengthen the window (n_periods)");
  }
  const Eigen::VectorXd solution = svd.solve(rhs);

  SystemSolution out{DensityBlock(spec.k, spec.m, j_max), {}, sv(0) / sv(n - 1)};
  for (int d = 0; d < n_diag; ++d) out.block.set(j0 + d, j0 + d, solution(2 * n_off + d));
  for (int j1 = j0 + 1; j1 <= j_max; ++j1) {
    for (int j2 = j0; j2 < j1; ++j2) {
      const ChainMember self{j1 + j2, j1 - j2};
      const int v = index.at(self);
      ElementDiagnostics diag;
      diag.j1 = j1;
      diag.j2 = j2;
      diag.value = {solution(2 * v), solution(2 * v + 1)};
      diag.chain = chains.at(self).members;
      const int reach = std::max(cap, static_cast<int>(std::min<long>(2L * kMaxAngularMomentum, static_cast<long>(self.dJ) * (self.J + 1))));
      for (const ChainMember& member : degeneracy_set_cd(self.J, self.dJ, j0, reach, spec, tol).members) {
        if (member.J > cap) diag.neglected.push_back(member);
      }
      diag.truncated = !diag.neglected.empty();
      out.block.set(j1, j2, diag.value);
      out.elements.push_back(std::move(diag));
    }
  }
  return out;
}

}  // namespace rotomo::detail
