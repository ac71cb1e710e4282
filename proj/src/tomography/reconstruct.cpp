#include <climits>
#include <cmath>
#include <map>
#include <string>

#include "internal.hpp"
#include "rotomo/tomography.hpp"

namespace rotomo {

SamplingPlan check_sampling(const MeasurementGrid& grid, const RotorSpec& spec, int j_max, int j_search_cap) {
  if (grid.k != spec.k || grid.m != spec.m) throw std::invalid_argument("reconstruct: data and rotor spec disagree on (k, m)");
  const double period = observation_period(spec);
  if (std::abs(grid.period - period) > 1e-12 * period) {
    throw std::invalid_argument("reconstruct: data period " + std::to_string(grid.period) + " does not match pi / omega = " +
                                std::to_string(period));
  }
  SamplingPlan requested;
  requested.n_periods = grid.n_periods;
  requested.j_search_cap = j_search_cap;
  const SamplingPlan plan = plan_sampling(spec, j_max, requested);
  const std::string problems = sampling_violations(grid, plan);
  if (!problems.empty()) {
    throw SamplingError("sampling insufficient for j_max = " + std::to_string(j_max) + ": " + problems +
                        "required n_t >= " + std::to_string(plan.n_t) + ", n_x >= " + std::to_string(plan.n_x));
  }
  return plan;
}

namespace {

OffDiagonalResult chain_back_substitution(const MeasurementGrid& grid, const RotorSpec& spec, int j_max, int cap) {
  const int j0 = spec.j_min();
  const BasisKind basis = spec.basis();
  const bool same_parity = parity_selection(spec.k, spec.m);
  MomentEngine engine(grid);
  std::map<ChainMember, std::complex<double>> solved;

  // rho of one chain member, from its own moment minus the deeper members.
  auto solve_chain = [&](const DegeneracyChain& chain) {
    for (auto it = chain.members.rbegin(); it != chain.members.rend(); ++it) {
      if (solved.contains(*it)) continue;
      std::complex<double> rhs = engine.moment(it->J, probe_frequency(spec, it->J, it->dJ));
      for (auto deeper = chain.members.rbegin(); deeper != it; ++deeper) {
        rhs -= product_coefficient(basis, spec.k, spec.m, deeper->J, deeper->dJ, it->J) * solved.at(*deeper);
      }
      solved[*it] = rhs / product_coefficient(basis, spec.k, spec.m, it->J, it->dJ, it->J);
    }
  };

  OffDiagonalResult result{DensityBlock(spec.k, spec.m, j_max), {}};
  for (int j1 = j0 + 1; j1 <= j_max; ++j1) {
    for (int j2 = j0; j2 < j1; ++j2) {
      const int alpha = j1 + j2;
      const int beta = j1 - j2;
      const DegeneracyChain chain = degeneracy_set(alpha, beta, j0, cap, same_parity);
      solve_chain(chain);
      ElementDiagnostics diag;
      diag.j1 = j1;
      diag.j2 = j2;
      diag.value = solved.at({alpha, beta});
      diag.chain = chain.members;
      for (const ChainMember& member : degeneracy_set(alpha, beta, j0, INT_MAX, same_parity).members) {
        if (member.J > cap) diag.neglected.push_back(member);
      }
      diag.truncated = !diag.neglected.empty();
      result.block.set(j1, j2, diag.value);
      result.elements.push_back(std::move(diag));
    }
  }
  return result;
}

std::vector<double> triangular_diagonal(const MeasurementGrid& grid, const RotorSpec& spec, int j_max) {
  const int j0 = spec.j_min();
  const Eigen::MatrixXd system = diagonal_system_matrix(spec.basis(), spec.k, spec.m, j_max);
  const int d = static_cast<int>(system.rows());
  MomentEngine engine(grid);
  std::vector<double> moments(d);
  for (int a = 0; a < d; ++a) moments[a] = engine.moment(2 * (j0 + a), 0.0).real();

  std::vector<double> rho(d, 0.0);
  for (int a = d - 1; a >= 0; --a) {
    double rhs = moments[a];
    for (int j = a + 1; j < d; ++j) rhs -= system(a, j) * rho[j];
    if (!(std::abs(system(a, a)) > 1e-14)) {
      throw std::runtime_error("reconstruct_diag: vanishing diagonal coefficient at J1 = " + std::to_string(j0 + a));
    }
    rho[a] = rhs / system(a, a);
  }
  return rho;
}

double resimulation_residual(const MeasurementGrid& grid, const RotorSpec& spec, const DensityBlock& block) {
  const MeasurementGrid resim = simulate_pr(block, spec, grid.x_grid, grid.n_t, grid.n_periods);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.values.size(); ++i) worst = std::max(worst, std::abs(resim.values[i] - grid.values[i]));
  return worst;
}

}  // namespace

Eigen::MatrixXd diagonal_system_matrix(BasisKind basis, int k, int m, int j_cap) {
  const int j0 = lowest_j(k, m);
  const int d = j_cap - j0 + 1;
  if (d < 1) throw std::invalid_argument("diagonal_system_matrix: j_cap below M_km");
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int j = a; j < d; ++j) system(a, j) = product_coefficient(basis, k, m, 2 * (j0 + j), 0, 2 * (j0 + a));
  }
  return system;
}

OffDiagonalResult reconstruct_offdiag(const MeasurementGrid& grid, const RotorSpec& spec, int j_max,
                                      const ReconstructOptions& options) {
  const SamplingPlan plan = check_sampling(grid, spec, j_max, options.j_search_cap);
  if (spec.kind == RotorKind::centrifugal_linear) {
    detail::SystemSolution sol = detail::solve_leakage_corrected(grid, spec, j_max, plan, options);
    DensityBlock off = sol.block;
    for (int J = off.j_min(); J <= j_max; ++J) off.set(J, J, 0.0);
    return {off, std::move(sol.elements)};
  }
  return chain_back_substitution(grid, spec, j_max, plan.j_search_cap);
}

std::vector<double> reconstruct_diag(const MeasurementGrid& grid, const RotorSpec& spec, int j_max) {
  const SamplingPlan plan = check_sampling(grid, spec, j_max, 0);
  if (spec.kind == RotorKind::centrifugal_linear) {
    const detail::SystemSolution sol = detail::solve_leakage_corrected(grid, spec, j_max, plan, {});
    std::vector<double> out;
    for (int J = sol.block.j_min(); J <= j_max; ++J) out.push_back(sol.block(J, J).real());
    return out;
  }
  return triangular_diagonal(grid, spec, j_max);
}

Reconstruction reconstruct_block(const MeasurementGrid& grid, const RotorSpec& spec, int j_max,
                                 const ReconstructOptions& options) {
  const SamplingPlan plan = check_sampling(grid, spec, j_max, options.j_search_cap);
  Reconstruction rec{DensityBlock(spec.k, spec.m, j_max), {}, plan, 0.0, 1.0, {}};
  if (spec.kind == RotorKind::centrifugal_linear) {
    detail::SystemSolution sol = detail::solve_leakage_corrected(grid, spec, j_max, plan, options);
    rec.block = std::move(sol.block);
    rec.elements = std::move(sol.elements);
    rec.condition = sol.condition;
    rec.method = "leakage-corrected-system";
  } else {
    OffDiagonalResult off = chain_back_substitution(grid, spec, j_max, plan.j_search_cap);
    const std::vector<double> diag = triangular_diagonal(grid, spec, j_max);
    rec.block = std::move(off.block);
    for (std::size_t a = 0; a < diag.size(); ++a) rec.block.set(rec.block.j_min() + static_cast<int>(a), rec.block.j_min() + static_cast<int>(a), diag[a]);
    rec.elements = std::move(off.elements);
    rec.method = "chain-back-substitution";
  }
  if (options.project_psd) rec.block = rec.block.projected_psd();
  rec.residual = resimulation_residual(grid, spec, rec.block);
  return rec;
}

}  // namespace rotomo
