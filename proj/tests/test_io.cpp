#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include "rotomo/io.hpp"

using namespace rotomo;

namespace {

MeasurementGrid sample_grid() {
  RotorSpec spec;
  spec.kind = RotorKind::symmetric_top;
  spec.omega = 1.7;
  spec.k = 1;
  spec.m = -1;
  const DensityBlock state = make_test_state(StateKind::random_mixed, 1, -1, 4, 9, 0.0, BasisKind::wigner);
  return simulate_pr(state, spec, cached_gauss_legendre_grid(11), 13, 2);
}

std::string replace_line(const std::string& text, int line_index, const std::string& replacement) {
  std::size_t begin = 0;
  for (int i = 0; i < line_index; ++i) begin = text.find('\n', begin) + 1;
  const std::size_t end = text.find('\n', begin);
  return text.substr(0, begin) + replacement + text.substr(end);
}

}  // namespace

TEST_CASE("state file round trip is exact") {
  const DensityBlock state = make_test_state(StateKind::random_mixed, 0, 2, 7, 4);
  const DensityBlock back = io::state_from_json(io::state_to_json(state));
  CHECK(back.k() == 0);
  CHECK(back.m() == 2);
  CHECK(back.j_max() == 7);
  CHECK(back.matrix() == state.matrix());

  const auto path = std::filesystem::temp_directory_path() / "rotomo_io_state.json";
  io::write_state(path, state);
  CHECK(io::read_state(path).matrix() == state.matrix());
  std::filesystem::remove(path);
}

TEST_CASE("state file diagnostics") {
  CHECK_THROWS_WITH_AS(io::state_from_json("{\"k\": 0, \"m\": 0}"), doctest::Contains("j_max"), io::ParseError);
  CHECK_THROWS_WITH_AS(io::state_from_json("{\"k\": 0, \"m\": 0, \"j_max\": 2, \"entries\": [[1, 0, 0.1, 0.0]]}"),
                       doctest::Contains("entries[0]"), io::ParseError);
  CHECK_THROWS_WITH_AS(io::state_from_json("{\"k\": 0, \"m\": 0, \"j_max\": 2, \"entries\": [[0, 0, 1.0, 0.0], [1, 1, 0.5, 0.3]]}"),
                       doctest::Contains("entries[1]"), io::ParseError);
  CHECK_THROWS_AS(io::state_from_json("{\"k\": 0, \"m\": 0, \"j_max\": 2, \"entries\": [[0, 5, 1.0, 0.0]]}"), io::ParseError);
  CHECK_THROWS_AS(io::state_from_json("{not json"), io::ParseError);
  CHECK_THROWS_AS(io::read_state("/nonexistent/dir/state.json"), std::runtime_error);

  const DensityBlock ok = io::state_from_json("{\"k\": 0, \"m\": 0, \"j_max\": 1, \"entries\": [[0, 1, 0.25, -0.5]]}");
  CHECK(ok(1, 0) == std::complex<double>(0.25, 0.5));
}

TEST_CASE("measurement file round trip is exact") {
  const MeasurementGrid grid = sample_grid();
  const std::string text = io::measurement_to_csv(grid);
  CHECK(text.rfind("# omega=1.7, kind=symmetric-top, k=1, m=-1, n_t=13, n_x=11, n_periods=2", 0) == 0);
  const MeasurementGrid back = io::measurement_from_csv(text);
  CHECK(back.omega == grid.omega);
  CHECK(back.kind == grid.kind);
  CHECK(back.k == 1);
  CHECK(back.m == -1);
  CHECK(back.n_t == 13);
  CHECK(back.n_periods == 2);
  CHECK(back.period == grid.period);
  CHECK(back.x_grid.nodes == grid.x_grid.nodes);
  CHECK(back.x_grid.weights == grid.x_grid.weights);
  CHECK(back.values == grid.values);
}

TEST_CASE("measurement file diagnostics name the line") {
  const std::string text = io::measurement_to_csv(sample_grid());
  CHECK_THROWS_AS(io::measurement_from_csv(""), io::ParseError);
  CHECK_THROWS_WITH_AS(io::measurement_from_csv(replace_line(text, 0, "# omega=1, kind=rigid-linear, k=0, m=0, n_t=13, n_x=11")),
                       doctest::Contains("n_periods"), io::ParseError);
  CHECK_THROWS_WITH_AS(io::measurement_from_csv(replace_line(text, 3, "0, 0.1, 0.2")), doctest::Contains("line 4"),
                       io::ParseError);
  CHECK_THROWS_WITH_AS(io::measurement_from_csv(replace_line(text, 5, "0, 0.1, abc, 0.2")), doctest::Contains("line 6"),
                       io::ParseError);
  CHECK_THROWS_WITH_AS(io::measurement_from_csv(text.substr(0, text.rfind('\n', text.size() - 2) + 1)),
                       doctest::Contains("data rows"), io::ParseError);
  CHECK_THROWS_WITH_AS(io::measurement_from_csv(replace_line(text, 0, "# omega=1, kind=oblate, k=0, m=0, n_t=13, n_x=11, n_periods=2")),
                       doctest::Contains("kind"), io::ParseError);
}

TEST_CASE("config parsing") {
  const io::ExperimentConfig cfg = io::config_from_text(R"(# experiment
spec.kind = centrifugal-linear
spec.omega = 2.0
spec.d_cd = 1e-3   # distortion
spec.m = 1
j_max = 5
sampling.n_periods = 64
sampling.n_t = 0
noise.samples_per_time = 1000
noise.seed = 9
state.kind = cos2-kicked
state.kick = 2.5
threshold = 1e-6
reconstruct.project_psd = true
)");
  CHECK(cfg.spec.kind == RotorKind::centrifugal_linear);
  CHECK(cfg.spec.omega == 2.0);
  CHECK(cfg.spec.d_cd == 1e-3);
  CHECK(cfg.spec.m == 1);
  CHECK(cfg.j_max == 5);
  CHECK(cfg.sampling.n_periods == 64);
  REQUIRE(cfg.noise.has_value());
  CHECK(cfg.noise->samples_per_time == 1000);
  CHECK(cfg.noise->seed == 9);
  CHECK(cfg.state_kind == StateKind::cos2_kicked);
  CHECK(cfg.kick_strength == 2.5);
  CHECK(cfg.threshold == 1e-6);
  CHECK(cfg.project_psd);

  CHECK_FALSE(io::config_from_text("spec.m = 0\n").noise.has_value());
  CHECK_THROWS_WITH_AS(io::config_from_text("spec.m = 0\nspec.colour = red\n"), doctest::Contains("line 2"), io::ParseError);
  CHECK_THROWS_WITH_AS(io::config_from_text("spec.omega = fast\n"), doctest::Contains("spec.omega"), io::ParseError);
  CHECK_THROWS_AS(io::config_from_text("just words\n"), io::ParseError);
  CHECK_THROWS_AS(io::config_from_text("spec.kind = prolate\n"), io::ParseError);
}

TEST_CASE("format_real round trips") {
  for (double v : {0.0, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(io::format_real(v)) == v);
}
