#include "peelsim/calibrate.hpp"

#include <algorithm>

#include "peelsim/metrics.hpp"
#include "peelsim/peeler.hpp"

namespace peelsim {

CalibrationResult calibrate(const RunConfig& config, const CalibrationParams& params) {
  CalibrationResult result;

  for (double k : params.stiffness_grid) {
    for (double eps : params.eps_grid) {
      RunConfig rc = config;
      rc.scene.adhesion_stiffness = k;
      rc.scene.fracture_threshold_eps = eps;
      const Scene scene = build_scene(rc.scene);

      RunLimits limits;
      limits.max_steps = params.max_steps;
      limits.snapshot_every = 0;
      const RunRecord rec =
          run_baseline(Method::Up, scene, rc.mpc_step_size, rc.solver, limits);

      CalibrationCandidate cand;
      cand.adhesion_stiffness = k;
      cand.fracture_eps = eps;
      cand.completed = rec.status == RunStatus::Complete;
      for (const auto& e : rec.fractures) {
        if (e.step > 0) {  // skip the grasp bootstrap
          cand.first_fracture_step = e.step;
          break;
        }
      }
      if (cand.first_fracture_step > 0 && rec.steps >= cand.first_fracture_step) {
        const DisplacementSeries series = displacement_series(rec, scene.landmarks);
        const auto& row = series[cand.first_fracture_step - 1];
        cand.lift_at_first_fracture_mm = *std::max_element(row.begin(), row.end()) * 1000.0;
      }
      cand.meets_criterion = cand.completed && cand.first_fracture_step > 0 &&
                             cand.lift_at_first_fracture_mm >= params.visible_lift_mm;
      result.candidates.push_back(cand);
    }
  }

  // Among qualifying candidates, prefer the gentlest visible lift.
  double best_lift = kInf;
  for (size_t i = 0; i < result.candidates.size(); ++i) {
    const auto& c = result.candidates[i];
    if (c.meets_criterion && c.lift_at_first_fracture_mm < best_lift) {
      best_lift = c.lift_at_first_fracture_mm;
      result.chosen = static_cast<int>(i);
    }
  }
  return result;
}

}  // namespace peelsim
