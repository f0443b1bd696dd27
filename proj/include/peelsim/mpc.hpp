#pragma once

#include <random>
#include <vector>

#include "peelsim/rollout.hpp"

namespace peelsim {

struct MpcParams {
  int num_seeds = 60;
  int horizon = 10;
  int gd_iterations = 1;
  double learning_rate = 0.5;
  double sample_sigma = 0.05;
  double step_size = 0.002;
  double fd_delta = 1e-4;
};

struct ControllerFailure : std::runtime_error {
  explicit ControllerFailure(const std::string& what) : std::runtime_error(what) {}
};

struct MpcDiagnostics {
  int num_candidates = 0;
  int chosen_index = -1;
  double best_initial_loss = kInf;
  double best_loss = kInf;
  double gd_improvement = 0.0;  // best_initial_loss - best_loss
  LossTerms chosen_terms;
};

struct MpcStepResult {
  Vec3 next_u = Vec3::Zero();
  Action chosen;
  MpcDiagnostics diag;
};

// Gaussian perturbations of the previous direction, re-normalized.
std::vector<Action> sample_seeds(const Action& prev_action, const MpcParams& params,
                                 std::mt19937_64& rng);

int argmin_index(const std::vector<double>& losses);

// One control step: sample seeds, gradient-refine each candidate over
// parallel-rollout losses, pick the argmin, and advance u by one action step.
MpcStepResult mpc_step(const AdhesionBook& book, const Action& prev_action,
                       const ParticleSystem& state, const ConstraintSet& constraints,
                       const MpcParams& params, const SdfHandle& sdf, const LossParams& loss,
                       const SolverParams& solver, std::mt19937_64& rng);

}  // namespace peelsim
