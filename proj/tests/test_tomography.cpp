#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "oracles.hpp"
#include "rotomo/tomography.hpp"

using namespace rotomo;
using cd = std::complex<double>;

namespace {

RotorSpec linear(int m = 0) {
  RotorSpec s;
  s.m = m;
  return s;
}

RotorSpec top(int k, int m) {
  RotorSpec s;
  s.kind = RotorKind::symmetric_top;
  s.k = k;
  s.m = m;
  s.omega2 = 0.4;
  return s;
}

MeasurementGrid auto_grid(const DensityBlock& block, const RotorSpec& spec, int j_max, SamplingPlan requested = {}) {
  return simulate_pr(block.resized(j_max), spec, plan_sampling(spec, j_max, requested));
}

// Exhaustive scan over every pair with J <= cap.
std::vector<ChainMember> brute_force_chain(int alpha, int beta, int j_min, int cap, bool same_parity) {
  std::vector<ChainMember> out;
  for (int J = 0; J <= cap; ++J) {
    for (int dJ = -J; dJ <= J; ++dJ) {
      if ((J - dJ) % 2 != 0) continue;
      if (static_cast<long>(dJ) * (J + 1) != static_cast<long>(beta) * (alpha + 1)) continue;
      if (same_parity && (J - alpha) % 2 != 0) continue;
      if (std::abs(dJ) > std::abs(beta) || (dJ > 0) != (beta > 0) || dJ == 0) continue;
      if ((J - std::abs(dJ)) / 2 < j_min) continue;
      out.push_back({J, dJ});
    }
  }
  std::sort(out.begin(), out.end(), [](const ChainMember& a, const ChainMember& b) { return std::abs(a.dJ) > std::abs(b.dJ); });
  return out;
}

std::vector<ChainMember> members(std::initializer_list<std::pair<int, int>> list) {
  std::vector<ChainMember> out;
  for (auto [J, dJ] : list) out.push_back({J, dJ});
  return out;
}

}  // namespace

TEST_CASE("degeneracy_set: worked examples") {
  CHECK(degeneracy_set(5, 5, 0, 40).members == members({{5, 5}, {9, 3}, {29, 1}}));
  CHECK(degeneracy_set(3, 3, 0, 40).members == members({{3, 3}, {11, 1}}));
  CHECK(degeneracy_set(1, 1, 0, 40).members == members({{1, 1}}));
  CHECK(degeneracy_set(5, 5, 0, 40).target == 30);
  CHECK(degeneracy_set(5, -5, 0, 40).members == members({{5, -5}, {9, -3}, {29, -1}}));
  CHECK(degeneracy_set(5, 5, 0, 15).members == members({{5, 5}, {9, 3}}));
  CHECK_THROWS_AS(degeneracy_set(4, 0, 0, 40), std::invalid_argument);
  CHECK_THROWS_AS(degeneracy_set(4, 3, 0, 40), std::invalid_argument);
}

TEST_CASE("degeneracy_set: agrees with the exhaustive scan") {
  for (bool same_parity : {true, false}) {
    for (int j_min : {0, 1, 3}) {
      for (int alpha = 1; alpha <= 20; ++alpha) {
        for (int beta = -alpha; beta <= alpha; beta += 2) {
          if (beta == 0) continue;
          const int cap = 2 * alpha * (alpha + 1);
          const DegeneracyChain chain = degeneracy_set(alpha, beta, j_min, cap, same_parity);
          CAPTURE(alpha);
          CAPTURE(beta);
          CHECK(chain.members == brute_force_chain(alpha, beta, j_min, cap, same_parity));
          for (std::size_t i = 1; i < chain.members.size(); ++i) {
            CHECK(std::abs(chain.members[i].dJ) < std::abs(chain.members[i - 1].dJ));
          }
        }
      }
    }
  }
}

TEST_CASE("search cap: enumerated bound versus the closed-form rule") {
  // For even j_max the closed form j (j + 1) / 2 misses chains: at j_max = 4
  // element (3, 0) pairs with (J, dJ) = (11, 1).
  CHECK(degeneracy_set(3, 3, 0, INT_MAX).members.back().J == 11);
  CHECK(required_search_cap(4, 0) >= 11);
  for (int j_max = 1; j_max <= 12; ++j_max) {
    int deepest = 2 * j_max;
    for (int j1 = 1; j1 <= j_max; ++j1) {
      for (int j2 = 0; j2 < j1; ++j2) {
        for (const ChainMember& mbr : brute_force_chain(j1 + j2, j1 - j2, 0, 2 * (j1 + j2) * (j1 + j2 + 1), true)) {
          deepest = std::max(deepest, mbr.J);
        }
      }
    }
    CHECK(required_search_cap(j_max, 0) == deepest);
    if (j_max % 2 == 1) CHECK(required_search_cap(j_max, 0) <= j_max * (j_max + 1));
  }
}

TEST_CASE("degeneracy_set_cd: detuning, reduction, monotonicity") {
  RotorSpec cdist = linear();
  cdist.kind = RotorKind::centrifugal_linear;
  cdist.d_cd = 1e-3;
  const double resolution = 2.0 * std::numbers::pi / (64 * std::numbers::pi);
  CHECK(degeneracy_set_cd(5, 5, 0, 40, cdist, resolution).members == members({{5, 5}}));
  // The rigid partners really are detuned by more than the resolution.
  const double w = probe_frequency(cdist, 5, 5);
  CHECK(std::abs(probe_frequency(cdist, 9, 3) - w) > resolution);
  CHECK(std::abs(probe_frequency(cdist, 29, 1) - w) > resolution);

  RotorSpec flat = cdist;
  flat.d_cd = 0.0;
  for (int alpha = 1; alpha <= 12; ++alpha) {
    for (int beta = 2 - alpha % 2; beta <= alpha; beta += 2) {
      CHECK(degeneracy_set_cd(alpha, beta, 0, 60, flat, 1e-9).members == degeneracy_set(alpha, beta, 0, 60).members);
      const auto rigid = degeneracy_set(alpha, beta, 0, 60).members;
      const auto wide = degeneracy_set_cd(alpha, beta, 0, 60, cdist, std::numeric_limits<double>::infinity()).members;
      for (const ChainMember& mbr : rigid) CHECK(std::find(wide.begin(), wide.end(), mbr) != wide.end());
    }
  }
}

TEST_CASE("moment integrals: examples and sampling errors") {
  DensityBlock state = make_test_state(StateKind::random_mixed, 0, 0, 4, 21);
  const MeasurementGrid g = auto_grid(state, linear(), 4);
  CHECK(std::abs(moment_integral(g, 0, 0, linear()).value - state.trace() / std::sqrt(2.0)) < 1e-12);

  DensityBlock one(0, 0, 4);
  one.set(1, 1, 1.0);
  const MeasurementGrid g1 = auto_grid(one, linear(), 4);
  double c2 = 0.0;
  for (auto [L, c] : product_decomp(1, 1, 0, 0)) {
    if (L == 2) c2 = c;
  }
  CHECK(std::abs(moment_integral(g1, 2, 0, linear()).value - c2) < 1e-12);
  CHECK(std::abs(moment_integral(g1, 1, 1, linear()).value) < 1e-12);

  const MeasurementGrid coarse = simulate_pr(state, linear(), cached_gauss_legendre_grid(9), 5, 1);
  CHECK_THROWS_AS(moment_integral(coarse, 4, 4, linear()), SamplingError);
  CHECK_THROWS_AS(moment_integral(coarse, 20, 0, linear()), SamplingError);
  CHECK_THROWS_AS(reconstruct_block(coarse, linear(), 4), SamplingError);
  CHECK_THROWS_WITH(reconstruct_block(coarse, linear(), 4), doctest::Contains("n_t >="));
}

TEST_CASE("moment integrals are Hermitian on arbitrary real data") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MeasurementGrid g;
  g.x_grid = cached_gauss_legendre_grid(25);
  g.n_t = 121;
  g.period = std::numbers::pi;
  g.values.resize(static_cast<std::size_t>(g.n_t) * g.n_x());
  for (double& v : g.values) v = u(rng);
  for (int alpha = 0; alpha <= 10; ++alpha) {
    for (int beta = -alpha; beta <= alpha; beta += 2) {
      const cd plus = moment_integral(g, alpha, beta, linear()).value;
      const cd minus = moment_integral(g, alpha, -beta, linear()).value;
      CHECK(std::abs(minus - std::conj(plus)) < 1e-10);
    }
  }
}

TEST_CASE("off-diagonal reconstruction examples") {
  DensityBlock ground(0, 0, 5);
  ground.set(0, 0, 1.0);
  const OffDiagonalResult r0 = reconstruct_offdiag(auto_grid(ground, linear(), 5), linear(), 5);
  CHECK(r0.block.matrix().cwiseAbs().maxCoeff() < 1e-10);

  DensityBlock sup(0, 0, 1);
  sup.set(0, 0, 0.5);
  sup.set(1, 1, 0.5);
  sup.set(1, 0, 0.5);
  const OffDiagonalResult r1 = reconstruct_offdiag(auto_grid(sup, linear(), 1), linear(), 1);
  CHECK(std::abs(r1.block(1, 0) - 0.5) < 1e-9);

  const DensityBlock pure = make_test_state(StateKind::random_pure, 0, 0, 5, 8);
  const OffDiagonalResult r2 = reconstruct_offdiag(auto_grid(pure, linear(), 5), linear(), 5);
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b < a; ++b) CHECK(std::abs(r2.block(a, b) - pure(a, b)) < 1e-8);
  }
}

TEST_CASE("diagonal reconstruction examples") {
  DensityBlock one(0, 0, 3);
  one.set(1, 1, 1.0);
  const MeasurementGrid g1 = auto_grid(one, linear(), 3);
  const std::vector<double> d1 = reconstruct_diag(g1, linear(), 3);
  REQUIRE(d1.size() == 4);
  for (int a = 0; a < 4; ++a) CHECK(std::abs(d1[a] - (a == 1 ? 1.0 : 0.0)) < 1e-10);

  DensityBlock mixed(0, 0, 2);
  for (int a = 0; a <= 2; ++a) mixed.set(a, a, 1.0 / 3.0);
  const std::vector<double> d2 = reconstruct_diag(auto_grid(mixed, linear(), 2), linear(), 2);
  for (double v : d2) CHECK(std::abs(v - 1.0 / 3.0) < 1e-10);

  const DensityBlock state = make_test_state(StateKind::random_mixed, 0, 0, 6, 2);
  const MeasurementGrid gs = auto_grid(state, linear(), 6);
  const std::vector<double> ds = reconstruct_diag(gs, linear(), 6);
  double trace = 0.0;
  for (double v : ds) trace += v;
  CHECK(std::abs(trace - std::sqrt(2.0) * moment_integral(gs, 0, 0, linear()).value.real()) < 1e-10);
}

TEST_CASE("pattern functions") {
  const Eigen::MatrixXd M = diagonal_system_matrix(BasisKind::legendre, 0, 0, 6);
  const PatternFunction last = pattern_function(6, 0, 0, 6);
  REQUIRE(last.coeffs.size() == 1);
  CHECK(last.coeffs.at(6) == doctest::Approx(1.0 / M(6, 6)).epsilon(1e-14));

  DensityBlock one(0, 0, 6);
  one.set(1, 1, 1.0);
  CHECK(std::abs(apply_pattern(auto_grid(one, linear(), 6), pattern_function(1, 0, 0, 6)) - 1.0) < 1e-10);

  for (auto [k, m] : {std::pair{0, 0}, std::pair{0, 2}, std::pair{1, 1}, std::pair{2, -1}}) {
    const BasisKind basis = default_basis(k);
    for (int j1 = lowest_j(k, m); j1 <= 8; ++j1) {
      const PatternFunction a = pattern_function(j1, k, m, 8, basis, PatternMethod::triangular);
      const PatternFunction b = pattern_function(j1, k, m, 8, basis, PatternMethod::cramer);
      for (const auto& [J, f] : a.coeffs) CHECK(std::abs(f - b.coeffs.at(J)) < 1e-10 * std::max(1.0, std::abs(f)));
    }
  }

  // Pattern functions are the rows of the inverse system.
  Eigen::MatrixXd inv(7, 7);
  for (int j1 = 0; j1 <= 6; ++j1) {
    const PatternFunction p = pattern_function(j1, 0, 0, 6);
    for (int J = 0; J <= 6; ++J) inv(j1, J) = p.coeffs.contains(J) ? p.coeffs.at(J) : 0.0;
  }
  CHECK(((inv * M) - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pattern functions and triangular solve agree on random diagonal blocks") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    DensityBlock diag(0, 0, 8);
    for (int J = 0; J <= 8; ++J) diag.set(J, J, u(rng));
    const MeasurementGrid g = auto_grid(diag, linear(), 8);
    const std::vector<double> tri = reconstruct_diag(g, linear(), 8);
    for (int J = 0; J <= 8; ++J) {
      CHECK(std::abs(apply_pattern(g, pattern_function(J, 0, 0, 8)) - tri[J]) < 1e-10);
      CHECK(std::abs(tri[J] - diag(J, J).real()) < 1e-10);
    }
  }
}

TEST_CASE("rigid round trips over j_max and m") {
  for (int m = 0; m <= 3; ++m) {
    for (int j_max : {std::max(m, 1), 5, 8}) {
      const DensityBlock state = make_test_state(StateKind::random_mixed, 0, m, j_max, 100 + m * 10 + j_max);
      const MeasurementGrid g = auto_grid(state, linear(m), j_max);
      const Reconstruction rec = reconstruct_block(g, linear(m), j_max);
      CAPTURE(m);
      CAPTURE(j_max);
      CHECK(DensityBlock::max_abs_difference(rec.block, state) < 1e-8);
      CHECK(rec.residual < 1e-9);
      CHECK(rec.method == "chain-back-substitution");
      for (const ElementDiagnostics& e : rec.elements) CHECK_FALSE(e.truncated);
    }
  }
}

TEST_CASE("truncated chains are flagged") {
  const DensityBlock state = make_test_state(StateKind::random_mixed, 0, 0, 5, 3);
  SamplingPlan tight;
  tight.j_search_cap = 15;
  const MeasurementGrid g = auto_grid(state, linear(), 5, tight);
  ReconstructOptions options;
  options.j_search_cap = 15;
  const Reconstruction rec = reconstruct_block(g, linear(), 5, options);
  const auto it = std::find_if(rec.elements.begin(), rec.elements.end(), [](const ElementDiagnostics& e) { return e.j1 == 5 && e.j2 == 0; });
  REQUIRE(it != rec.elements.end());
  CHECK(it->truncated);
  CHECK(it->neglected == members({{29, 1}}));
  CHECK(it->chain == members({{5, 5}, {9, 3}}));
  const std::string report = format_report(rec);
  CHECK(report.find("contaminated-by-truncation") != std::string::npos);
  CHECK(report.find("(29,1)") != std::string::npos);
}

TEST_CASE("reconstruction is linear in the data") {
  const DensityBlock a = make_test_state(StateKind::random_mixed, 0, 1, 5, 31);
  const DensityBlock b = make_test_state(StateKind::random_pure, 0, 1, 5, 32);
  const double lambda = 0.3;
  const MeasurementGrid ga = auto_grid(a, linear(1), 5);
  const MeasurementGrid gb = auto_grid(b, linear(1), 5);
  MeasurementGrid mix = ga;
  for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] = lambda * ga.values[i] + (1.0 - lambda) * gb.values[i];
  const Eigen::MatrixXcd combo = lambda * reconstruct_block(ga, linear(1), 5).block.matrix() +
                                 (1.0 - lambda) * reconstruct_block(gb, linear(1), 5).block.matrix();
  CHECK((reconstruct_block(mix, linear(1), 5).block.matrix() - combo).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("symmetric top round trips") {
  for (auto [k, m] : {std::pair{1, 1}, std::pair{2, -1}, std::pair{1, 0}, std::pair{-2, 3}}) {
    const RotorSpec spec = top(k, m);
    const int j_max = lowest_j(k, m) + 4;
    const DensityBlock state = make_test_state(StateKind::random_mixed, k, m, j_max, 7, 0.0, BasisKind::wigner);
    const Reconstruction rec = reconstruct_block(auto_grid(state, spec, j_max), spec, j_max);
    CAPTURE(k);
    CAPTURE(m);
    CHECK(DensityBlock::max_abs_difference(rec.block, state) < 1e-8);
    CHECK(rec.residual < 1e-9);
  }
}

TEST_CASE("k = 0 symmetric top matches the linear rotor on identical data") {
  for (int m : {0, 1, 2}) {
    const DensityBlock state = make_test_state(StateKind::random_mixed, 0, m, 5, 40 + m);
    const MeasurementGrid g = auto_grid(state, linear(m), 5);
    const Reconstruction lin = reconstruct_block(g, linear(m), 5);
    RotorSpec t0 = top(0, m);
    t0.omega2 = 0.0;
    const Reconstruction sym = reconstruct_block(g, t0, 5);
    CHECK(DensityBlock::max_abs_difference(lin.block, sym.block) < 1e-11);
  }
}

TEST_CASE("centrifugal reconstruction") {
  RotorSpec cdist = linear();
  cdist.kind = RotorKind::centrifugal_linear;
  cdist.d_cd = 1e-3;
  SamplingPlan window;
  window.n_periods = 64;
  const DensityBlock state = make_test_state(StateKind::random_mixed, 0, 0, 5, 55);
  const MeasurementGrid g = auto_grid(state, cdist, 5, window);
  const Reconstruction rec = reconstruct_block(g, cdist, 5);
  CHECK(rec.method == "leakage-corrected-system");
  CHECK(DensityBlock::max_abs_difference(rec.block, state) < 1e-6);
  CHECK(rec.condition >= 1.0);

  RotorSpec zero = cdist;
  zero.d_cd = 0.0;
  const MeasurementGrid gz = auto_grid(state, zero, 5, window);
  const Reconstruction via_cd = reconstruct_block(gz, zero, 5);
  const Reconstruction via_rigid = reconstruct_block(gz, linear(), 5);
  CHECK(DensityBlock::max_abs_difference(via_cd.block, via_rigid.block) < 1e-10);
}

TEST_CASE("PSD projection option and zero data") {
  const DensityBlock state = make_test_state(StateKind::random_pure, 0, 0, 3, 66);
  const MeasurementGrid clean = auto_grid(state, linear(), 3);
  const MeasurementGrid noisy = add_shot_noise(clean, 2000, 5);
  ReconstructOptions options;
  options.project_psd = true;
  const Reconstruction rec = reconstruct_block(noisy, linear(), 3, options);
  CHECK(rec.block.is_psd());
  CHECK(std::abs(rec.block.trace().real() - 1.0) < 1e-6);

  MeasurementGrid empty = clean;
  std::fill(empty.values.begin(), empty.values.end(), 0.0);
  const Reconstruction none = reconstruct_block(empty, linear(), 3);
  CHECK(none.block.matrix().cwiseAbs().maxCoeff() == 0.0);
  CHECK(none.residual == 0.0);
}

TEST_CASE("report layout") {
  const DensityBlock state = make_test_state(StateKind::random_mixed, 0, 0, 2, 1);
  const Reconstruction rec = reconstruct_block(auto_grid(state, linear(), 2), linear(), 2);
  const std::string report = format_report(rec);
  CHECK(report.find("method: chain-back-substitution") != std::string::npos);
  CHECK(report.find("offdiag 2 1") != std::string::npos);
  CHECK(report.find("diag 0") != std::string::npos);
  CHECK(report.find("contaminated") == std::string::npos);
}
