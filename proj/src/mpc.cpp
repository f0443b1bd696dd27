#include "peelsim/mpc.hpp"

namespace peelsim {

std::vector<Action> sample_seeds(const Action& prev_action, const MpcParams& params,
                                 std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, params.sample_sigma);
  std::vector<Action> out;
  out.reserve(params.num_seeds);
  for (int i = 0; i < params.num_seeds; ++i) {
    Vec3 dir;
    int tries = 0;
    do {
      dir = prev_action.direction + Vec3(gauss(rng), gauss(rng), gauss(rng));
      if (++tries > 100) throw ControllerFailure("seed sampling degenerated to zero vectors");
    } while (dir.norm() < 1e-9);
    out.push_back({dir.normalized(), params.step_size});
  }
  return out;
}

int argmin_index(const std::vector<double>& losses) {
  int best = -1;
  double best_loss = kInf;
  for (size_t i = 0; i < losses.size(); ++i) {
    if (losses[i] < best_loss) {
      best_loss = losses[i];
      best = static_cast<int>(i);
    }
  }
  return best;
}

MpcStepResult mpc_step(const AdhesionBook& book, const Action& prev_action,
                       const ParticleSystem& state, const ConstraintSet& constraints,
                       const MpcParams& params, const SdfHandle& sdf, const LossParams& loss,
                       const SolverParams& solver, std::mt19937_64& rng) {
  RolloutSpec spec;
  spec.start_state = &state;
  spec.constraints = &constraints;
  spec.book = &book;
  spec.sdf = &sdf;
  spec.start_u = state.positions[state.driven_index];
  spec.horizon = params.horizon;
  spec.solver = solver;
  spec.loss = loss;
  spec.prev_action = prev_action;

  std::vector<Action> candidates = sample_seeds(prev_action, params, rng);
  std::vector<double> losses(candidates.size(), kInf);
  std::vector<LossTerms> terms(candidates.size());

  double best_initial = kInf;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const RolloutResult r = rollout(spec, candidates[i]);
    if (r.ok) {
      losses[i] = r.loss;
      terms[i] = r.terms;
      best_initial = std::min(best_initial, r.loss);
    }
  }

  for (int it = 0; it < params.gd_iterations; ++it) {
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (losses[i] == kInf) continue;
      const GradientResult g = loss_gradient(spec, candidates[i], params.fd_delta);
      if (!g.ok) continue;  // keep the unperturbed loss, skip descent
      Action updated = candidates[i];
      updated.direction -= params.learning_rate * g.gradient;
      if (updated.direction.norm() < 1e-12) continue;
      updated.direction.normalize();
      const RolloutResult r = rollout(spec, updated);
      // A step is kept only when it does not worsen the candidate.
      if (r.ok && r.loss <= losses[i]) {
        candidates[i] = updated;
        losses[i] = r.loss;
        terms[i] = r.terms;
      }
    }
  }

  const int chosen = argmin_index(losses);
  if (chosen < 0) throw ControllerFailure("all MPC candidates diverged");

  MpcStepResult out;
  out.chosen = candidates[chosen];
  out.next_u = spec.start_u + out.chosen.direction * out.chosen.step_size;
  out.diag.num_candidates = static_cast<int>(candidates.size());
  out.diag.chosen_index = chosen;
  out.diag.best_initial_loss = best_initial;
  out.diag.best_loss = losses[chosen];
  out.diag.gd_improvement = best_initial - losses[chosen];
  out.diag.chosen_terms = terms[chosen];
  return out;
}

}  // namespace peelsim
