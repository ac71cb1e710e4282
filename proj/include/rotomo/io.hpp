#pragma once

// File formats:
//   state file (JSON): {"k": int, "m": int, "j_max": int,
//                       "entries": [[J1, J2, re, im], ...]}  with J1 <= J2;
//                      the lower triangle is filled by conjugation on load.
//   measurement file (CSV):
//     # omega=<>, kind=<>, k=<>, m=<>, n_t=<>, n_x=<>, n_periods=<>
//     t, x, weight, pr        (one row per (t_i, x_j), time-major)
//   config file: `key = value` lines, `#` starts a comment.
// Reals are written in shortest round-trip form, so write-then-read is exact.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "rotomo/rotor_model.hpp"

namespace rotomo::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string state_to_json(const DensityBlock& block);
DensityBlock state_from_json(const std::string& text);
void write_state(const std::filesystem::path& path, const DensityBlock& block);
DensityBlock read_state(const std::filesystem::path& path);

std::string measurement_to_csv(const MeasurementGrid& grid);
MeasurementGrid measurement_from_csv(const std::string& text);
void write_measurement(const std::filesystem::path& path, const MeasurementGrid& grid);
MeasurementGrid read_measurement(const std::filesystem::path& path);

struct NoiseConfig {
  std::int64_t samples_per_time = 0;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  RotorSpec spec;
  int j_max = 0;  // 0: take it from the state file
  SamplingPlan sampling;
  std::optional<NoiseConfig> noise;
  StateKind state_kind = StateKind::random_mixed;
  double kick_strength = 0.0;
  std::uint64_t seed = 1;
  double threshold = 1e-8;
  bool project_psd = false;
};

// Keys: spec.kind spec.omega spec.omega2 spec.d_cd spec.k spec.m j_max
// sampling.n_periods sampling.n_t sampling.n_x sampling.j_search_cap
// noise.samples_per_time noise.seed state.kind state.kick seed threshold
// reconstruct.project_psd
ExperimentConfig config_from_text(const std::string& text);
ExperimentConfig read_config(const std::filesystem::path& path);

std::string format_real(double value);

}  // namespace rotomo::io
