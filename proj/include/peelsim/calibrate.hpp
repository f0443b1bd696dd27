#pragma once

#include <vector>

#include "peelsim/scene.hpp"

namespace peelsim {

// Vertical-pull probe sweep: for each (adhesion_stiffness, eps) candidate the
// Up baseline is run and the skin lift at the first fracture is measured. A
// candidate qualifies when the first fracture happens only after a visible
// lift and the pull still detaches everything within the step budget.
struct CalibrationCandidate {
  double adhesion_stiffness = 0.0;
  double fracture_eps = 0.0;
  double lift_at_first_fracture_mm = 0.0;
  int first_fracture_step = -1;
  bool completed = false;
  bool meets_criterion = false;
};

struct CalibrationParams {
  std::vector<double> stiffness_grid = {0.25, 0.5, 1.0, 2.0};
  std::vector<double> eps_grid = {5e-7, 1e-6, 2e-6, 5e-6};
  double visible_lift_mm = 2.0;
  int max_steps = 2000;
};

struct CalibrationResult {
  std::vector<CalibrationCandidate> candidates;
  int chosen = -1;  // index into candidates; -1 when nothing qualified
};

CalibrationResult calibrate(const RunConfig& config, const CalibrationParams& params);

}  // namespace peelsim
