// rotomo: simulate, reconstruct and inspect rotational density-matrix blocks.
//
// Exit codes: 0 success, 1 runtime failure or threshold miss, 2 usage error,
// 3 sampling insufficient for the requested reconstruction.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rotomo/io.hpp"
#include "rotomo/tomography.hpp"

namespace {

using namespace rotomo;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSampling = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string state;
  std::string data;
  std::string out;
  std::string report;
  std::string alignment_out;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  int k = 0;
  int m = 0;
  std::string j_range;
  std::optional<int> dj;
  std::optional<int> l;
  std::string basis;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

io::ExperimentConfig load_config(const Options& opt) {
  if (opt.config.empty()) return {};
  return io::read_config(opt.config);
}

// Grid sizes for simulation: explicit config values win, zeros are filled
// from the sampling rules for j_max.
SamplingPlan simulation_plan(const io::ExperimentConfig& cfg, int j_max) {
  SamplingPlan base;
  base.n_periods = cfg.sampling.n_periods;
  base.j_search_cap = cfg.sampling.j_search_cap;
  SamplingPlan plan = plan_sampling(cfg.spec, j_max, base);
  if (cfg.sampling.n_t > 0) plan.n_t = cfg.sampling.n_t;
  if (cfg.sampling.n_x > 0) plan.n_x = cfg.sampling.n_x;
  return plan;
}

MeasurementGrid simulate_with_noise(const DensityBlock& block, const io::ExperimentConfig& cfg, const SamplingPlan& plan,
                                    std::optional<std::uint64_t> seed_override) {
  MeasurementGrid grid = simulate_pr(block, cfg.spec, cached_gauss_legendre_grid(plan.n_x), plan.n_t, plan.n_periods);
  if (cfg.noise) grid = add_shot_noise(grid, cfg.noise->samples_per_time, seed_override.value_or(cfg.noise->seed));
  return grid;
}

std::string alignment_csv(const MeasurementGrid& grid) {
  std::ostringstream out;
  out << "t, cos2\n";
  const std::vector<double> trace = alignment_trace(grid);
  for (int i = 0; i < grid.n_t; ++i) out << io::format_real(grid.time(i)) << ", " << io::format_real(trace[i]) << "\n";
  return out.str();
}

int cmd_simulate(const Options& opt) {
  if (opt.state.empty() || opt.out.empty()) throw UsageError("simulate needs --state and --out");
  const io::ExperimentConfig cfg = load_config(opt);
  DensityBlock state = io::read_state(opt.state);
  if (state.k() != cfg.spec.k || state.m() != cfg.spec.m) {
    throw std::runtime_error("state file (k, m) = (" + std::to_string(state.k()) + ", " + std::to_string(state.m()) +
                             ") does not match config spec (" + std::to_string(cfg.spec.k) + ", " +
                             std::to_string(cfg.spec.m) + ")");
  }
  const int j_max = std::max(cfg.j_max, state.j_max());
  state = state.resized(j_max);
  const SamplingPlan plan = simulation_plan(cfg, j_max);
  const MeasurementGrid grid = simulate_with_noise(state, cfg, plan, opt.seed);
  io::write_measurement(opt.out, grid);
  if (!opt.alignment_out.empty()) write_text(opt.alignment_out, alignment_csv(grid));
  std::cout << std::setprecision(15) << "trace " << state.trace().real() << "\n"
            << "period " << grid.period << "\n"
            << "n_t " << grid.n_t << " n_x " << grid.n_x() << " n_periods " << grid.n_periods << "\n";
  return 0;
}

int cmd_reconstruct(const Options& opt) {
  if (opt.data.empty() || opt.out.empty()) throw UsageError("reconstruct needs --data and --out");
  io::ExperimentConfig cfg = load_config(opt);
  const MeasurementGrid grid = io::read_measurement(opt.data);
  if (opt.config.empty()) {
    cfg.spec.kind = grid.kind;
    cfg.spec.omega = grid.omega;
    cfg.spec.k = grid.k;
    cfg.spec.m = grid.m;
  }
  if (grid.kind != cfg.spec.kind) {
    throw std::runtime_error("data kind " + std::string(to_string(grid.kind)) + " does not match config kind " +
                             std::string(to_string(cfg.spec.kind)));
  }
  std::optional<DensityBlock> truth;
  if (!opt.state.empty()) truth = io::read_state(opt.state);
  int j_max = cfg.j_max;
  if (j_max == 0) j_max = truth ? truth->j_max() : cfg.spec.j_min();

  ReconstructOptions ro;
  ro.j_search_cap = cfg.sampling.j_search_cap;
  ro.project_psd = cfg.project_psd;
  const Reconstruction rec = reconstruct_block(grid, cfg.spec, j_max, ro);
  io::write_state(opt.out, rec.block);

  std::string report = format_report(rec);
  if (truth) {
    std::ostringstream extra;
    extra << std::setprecision(6) << "max_abs_error: " << DensityBlock::max_abs_difference(rec.block, *truth) << "\n";
    report += extra.str();
  }
  if (opt.report.empty()) {
    std::cout << report;
  } else {
    write_text(opt.report, report);
    std::cout << std::setprecision(6) << "residual " << rec.residual << "\n";
  }
  return 0;
}

std::pair<int, int> parse_range(const std::string& text) {
  const std::size_t colon = text.find(':');
  int lo = 0, hi = 0;
  auto number = [&](std::string_view s, int& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
  };
  if (colon == std::string::npos || !number(std::string_view(text).substr(0, colon), lo) ||
      !number(std::string_view(text).substr(colon + 1), hi) || lo < 0 || hi < lo) {
    throw UsageError("--j-range expects lo:hi with 0 <= lo <= hi, got '" + text + "'");
  }
  return {lo, hi};
}

int cmd_coeffs(const Options& opt) {
  const auto [lo, hi] = parse_range(opt.j_range);
  if (hi > kMaxAngularMomentum) throw UsageError("--j-range upper end above " + std::to_string(kMaxAngularMomentum));
  BasisKind basis = default_basis(opt.k);
  if (opt.basis == "wigner") {
    basis = BasisKind::wigner;
  } else if (opt.basis == "legendre") {
    if (opt.k != 0) throw UsageError("legendre basis requires --k 0");
    basis = BasisKind::legendre;
  } else if (!opt.basis.empty()) {
    throw UsageError("--basis must be legendre or wigner");
  }
  const CoefficientTable table = coefficient_table(basis, opt.k, opt.m, lo, hi);
  std::cout << "# J dJ L C\n" << std::setprecision(17);
  for (const auto& [key, value] : table.entries) {
    const auto [J, dJ, L] = key;
    if (opt.dj && *opt.dj != dJ) continue;
    if (opt.l && *opt.l != L) continue;
    if (value == 0.0) continue;
    std::cout << J << " " << dJ << " " << L << " " << value << "\n";
  }
  return 0;
}

int cmd_roundtrip(const Options& opt) {
  io::ExperimentConfig cfg = load_config(opt);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.threshold) cfg.threshold = *opt.threshold;
  const int j_max = std::max(cfg.j_max, cfg.spec.j_min());
  validate(cfg.spec, j_max);

  const DensityBlock truth =
      make_test_state(cfg.state_kind, cfg.spec.k, cfg.spec.m, j_max, cfg.seed, cfg.kick_strength, cfg.spec.basis());
  const SamplingPlan plan = simulation_plan(cfg, j_max);
  const MeasurementGrid grid = simulate_with_noise(truth, cfg, plan, std::nullopt);

  ReconstructOptions ro;
  ro.j_search_cap = cfg.sampling.j_search_cap;
  ro.project_psd = cfg.project_psd;
  const Reconstruction rec = reconstruct_block(grid, cfg.spec, j_max, ro);
  const double max_error = DensityBlock::max_abs_difference(rec.block, truth);

  std::ostringstream metrics;
  metrics << std::setprecision(6);
  metrics << "max_error " << max_error << "\n"
          << "residual " << rec.residual << "\n"
          << "threshold " << cfg.threshold << "\n"
          << "method " << rec.method << "\n"
          << "# J1 J2 true_re true_im rec_re rec_im abs_error\n";
  metrics << std::setprecision(12);
  for (int a = truth.j_min(); a <= j_max; ++a) {
    for (int b = truth.j_min(); b <= a; ++b) {
      const auto t = truth(a, b);
      const auto r = rec.block(a, b);
      metrics << a << " " << b << " " << t.real() << " " << t.imag() << " " << r.real() << " " << r.imag() << " "
              << std::abs(r - t) << "\n";
    }
  }
  if (!opt.out.empty()) write_text(opt.out, metrics.str());
  const bool pass = max_error < cfg.threshold;
  std::cout << std::setprecision(6) << "max_error " << max_error << " residual " << rec.residual << " "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotational state tomography from time-resolved polar angular distributions"};
  app.require_subcommand(1);
  Options opt;

  auto* simulate = app.add_subcommand("simulate", "Forward-simulate Pr(x, t) from a state file");
  simulate->add_option("--config", opt.config, "Experiment config");
  simulate->add_option("--state", opt.state, "Density block (JSON)")->required();
  simulate->add_option("--out", opt.out, "Measurement CSV to write")->required();
  simulate->add_option("--seed", opt.seed, "Shot-noise seed (overrides noise.seed)");
  simulate->add_option("--alignment-out", opt.alignment_out, "Write <cos^2 theta>(t) as CSV");

  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct a density block from a measurement file");
  reconstruct->add_option("--config", opt.config, "Experiment config");
  reconstruct->add_option("--data", opt.data, "Measurement CSV")->required();
  reconstruct->add_option("--out", opt.out, "Reconstructed block (JSON)")->required();
  reconstruct->add_option("--report", opt.report, "Write the report here instead of stdout");
  reconstruct->add_option("--state", opt.state, "Reference block; adds max_abs_error to the report");

  auto* coeffs = app.add_subcommand("coeffs", "Dump product coefficients C(J, dJ, L)");
  coeffs->add_option("--k", opt.k, "k quantum number");
  coeffs->add_option("--m", opt.m, "m quantum number");
  coeffs->add_option("--j-range", opt.j_range, "J = J1 + J2 range lo:hi")->required();
  coeffs->add_option("--dj", opt.dj, "Only this dJ");
  coeffs->add_option("--l", opt.l, "Only this L");
  coeffs->add_option("--basis", opt.basis, "legendre or wigner (default: legendre iff k = 0)");

  auto* roundtrip = app.add_subcommand("roundtrip", "Generate, simulate, reconstruct and compare");
  roundtrip->add_option("--config", opt.config, "Experiment config")->required();
  roundtrip->add_option("--out", opt.out, "Metrics file");
  roundtrip->add_option("--seed", opt.seed, "State seed (overrides config)");
  roundtrip->add_option("--threshold", opt.threshold, "Pass threshold on max element error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(opt);
    if (*reconstruct) return cmd_reconstruct(opt);
    if (*coeffs) return cmd_coeffs(opt);
    if (*roundtrip) return cmd_roundtrip(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SamplingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSampling;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.rfind("sampling insufficient", 0) == 0 ? kExitSampling : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
