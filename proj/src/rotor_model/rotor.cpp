#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rotomo/rotor_model.hpp"

namespace rotomo {

std::string_view to_string(RotorKind kind) noexcept {
  switch (kind) {
    case RotorKind::rigid_linear: return "rigid-linear";
    case RotorKind::centrifugal_linear: return "centrifugal-linear";
    case RotorKind::symmetric_top: return "symmetric-top";
  }
  return "unknown";
}

RotorKind parse_rotor_kind(std::string_view text) {
  if (text == "rigid-linear") return RotorKind::rigid_linear;
  if (text == "centrifugal-linear") return RotorKind::centrifugal_linear;
  if (text == "symmetric-top") return RotorKind::symmetric_top;
  throw std::invalid_argument("unknown rotor kind '" + std::string(text) +
                              "' (expected rigid-linear, centrifugal-linear or symmetric-top)");
}

void validate(const RotorSpec& spec, int j_cap) {
  if (!(spec.omega > 0.0) || !std::isfinite(spec.omega)) throw std::invalid_argument("rotor spec: omega must be positive");
  if (!(spec.d_cd >= 0.0) || !std::isfinite(spec.d_cd)) throw std::invalid_argument("rotor spec: d_cd must be >= 0");
  if (!std::isfinite(spec.omega2)) throw std::invalid_argument("rotor spec: omega2 must be finite");
  if (spec.kind != RotorKind::symmetric_top && spec.k != 0) {
    throw std::invalid_argument("rotor spec: linear rotors require k = 0");
  }
  if (std::abs(spec.k) > kMaxAngularMomentum || std::abs(spec.m) > kMaxAngularMomentum) {
    throw std::invalid_argument("rotor spec: |k| or |m| above supported cap");
  }
  if (spec.kind == RotorKind::centrifugal_linear && j_cap > 0) {
    const double bound = 1.0 / (2.0 * j_cap * (j_cap + 1.0));
    if (!(spec.d_cd / spec.omega < bound)) {
      std::ostringstream msg;
      msg << "rotor spec: centrifugal d_cd/omega = " << spec.d_cd / spec.omega << " must stay below " << bound
          << " so E_J increases up to J = " << j_cap;
      throw std::invalid_argument(msg.str());
    }
  }
}

double energy(const RotorSpec& spec, int J) {
  const double a = static_cast<double>(J) * (J + 1.0);
  switch (spec.kind) {
    case RotorKind::rigid_linear: return spec.omega * a;
    case RotorKind::centrifugal_linear: return spec.omega * a - spec.d_cd * a * a;
    case RotorKind::symmetric_top: return spec.omega * a - spec.omega2 * static_cast<double>(spec.k) * spec.k;
  }
  return 0.0;
}

double bohr_frequency(const RotorSpec& spec, int J1, int J2) {
  // Written through a1 - a2 and a1 + a2 so near-cancellation stays exact in
  // integer arithmetic for the rigid part.
  const double a1 = static_cast<double>(J1) * (J1 + 1.0);
  const double a2 = static_cast<double>(J2) * (J2 + 1.0);
  const double diff = a1 - a2;
  if (spec.kind == RotorKind::centrifugal_linear) return diff * (spec.omega - spec.d_cd * (a1 + a2));
  return spec.omega * diff;
}

double revival_period(const RotorSpec& spec) {
  if (spec.kind == RotorKind::centrifugal_linear) {
    throw std::domain_error("revival_period: centrifugal rotor has no exact period; use the long-window path");
  }
  return std::numbers::pi / spec.omega;
}

double observation_period(const RotorSpec& spec) noexcept { return std::numbers::pi / spec.omega; }

SamplingPlan plan_sampling(const RotorSpec& spec, int j_max, SamplingPlan requested) {
  validate(spec, j_max);
  const int j_min = spec.j_min();
  if (j_max < j_min) throw std::invalid_argument("sampling: j_max below M_km");
  if (requested.n_periods < 1) throw std::invalid_argument("sampling: n_periods must be >= 1");
  if (requested.n_t < 0 || requested.n_x < 0 || requested.j_search_cap < 0) {
    throw std::invalid_argument("sampling: negative sampling order");
  }

  SamplingPlan plan = requested;
  if (plan.j_search_cap == 0) plan.j_search_cap = required_search_cap(j_max, j_min, parity_selection(spec.k, spec.m));
  if (plan.j_search_cap > 2 * kMaxAngularMomentum) throw std::invalid_argument("sampling: search cap too large");

  const long h_max = static_cast<long>(j_max) * (j_max + 1) / 2;
  const long min_t = static_cast<long>(plan.n_periods) * (2 * h_max + 1);
  const int min_x = std::max(2 * j_max + 1, (plan.j_search_cap + 2 * j_max + 2) / 2);

  if (plan.n_t == 0) plan.n_t = static_cast<int>(min_t);
  if (plan.n_x == 0) plan.n_x = min_x;

  std::ostringstream msg;
  if (plan.n_t < min_t) msg << "n_t = " << plan.n_t << " below required n_t >= " << min_t << " (time Nyquist); ";
  if (plan.n_x < min_x) msg << "n_x = " << plan.n_x << " below required n_x >= " << min_x << " (x quadrature exactness); ";
  if (!msg.str().empty()) throw std::invalid_argument("sampling insufficient: " + msg.str());
  return plan;
}

std::string sampling_violations(const MeasurementGrid& grid, const SamplingPlan& required) {
  std::ostringstream msg;
  if (grid.n_periods != required.n_periods) {
    msg << "n_periods = " << grid.n_periods << " but plan expects " << required.n_periods << "; ";
  }
  if (grid.n_t < required.n_t) msg << "n_t = " << grid.n_t << " below required n_t >= " << required.n_t << "; ";
  if (grid.n_x() < required.n_x) msg << "n_x = " << grid.n_x() << " below required n_x >= " << required.n_x << "; ";
  if (grid.values.size() != static_cast<std::size_t>(grid.n_t) * grid.n_x()) msg << "value count mismatch; ";
  return msg.str();
}

double MeasurementGrid::integral(int it) const {
  double acc = 0.0;
  const double* r = row(it);
  for (int j = 0; j < n_x(); ++j) acc += x_grid.weights[j] * r[j];
  return acc;
}

std::vector<double> alignment_trace(const MeasurementGrid& grid) {
  std::vector<double> out(grid.n_t, 0.0);
  for (int i = 0; i < grid.n_t; ++i) {
    const double* r = grid.row(i);
    double acc = 0.0;
    for (int j = 0; j < grid.n_x(); ++j) {
      const double x = grid.x_grid.nodes[j];
      acc += grid.x_grid.weights[j] * x * x * r[j];
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace rotomo
