#pragma once

#include "rotomo/tomography.hpp"

namespace rotomo::detail {

struct SystemSolution {
  DensityBlock block;
  std::vector<ElementDiagnostics> elements;
  double condition = 1.0;
};

// Joint solve of all probe moments against the exact discrete-window kernel.
SystemSolution solve_leakage_corrected(const MeasurementGrid& grid, const RotorSpec& spec, int j_max,
                                       const SamplingPlan& plan, const ReconstructOptions& options);

}  // namespace rotomo::detail
