#pragma once

#include <vector>

#include "peelsim/adhesion.hpp"
#include "peelsim/core.hpp"
#include "peelsim/objectives.hpp"
#include "peelsim/scene.hpp"

namespace peelsim {

// Immutable snapshots for one prediction horizon. Adhesion stiffness is
// frozen for the whole rollout; fracture is applied only on committed steps.
struct RolloutSpec {
  const ParticleSystem* start_state = nullptr;
  const ConstraintSet* constraints = nullptr;
  const AdhesionBook* book = nullptr;  // layers frozen at rollout start
  const SdfHandle* sdf = nullptr;
  Vec3 start_u = Vec3::Zero();
  int horizon = 10;
  SolverParams solver;
  LossParams loss;
  Action prev_action;
};

struct RolloutResult {
  ParticleSystem final_state;
  std::vector<Vec3> u_path;
  LossTerms terms;
  double loss = kInf;
  bool ok = false;
};

// Applies u += v*s for `horizon` quasi-static steps and scores the endpoint.
// Solver divergence yields ok=false with infinite loss.
RolloutResult rollout(const RolloutSpec& spec, const Action& action);

struct GradientResult {
  Vec3 gradient = Vec3::Zero();
  bool ok = false;
};

// Central finite differences of the rollout loss w.r.t. the direction
// components; each perturbed direction is re-normalized before rolling out.
GradientResult loss_gradient(const RolloutSpec& spec, const Action& action, double delta = 1e-4);

}  // namespace peelsim
