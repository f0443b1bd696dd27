#include "peelsim/rollout.hpp"

namespace peelsim {

RolloutResult rollout(const RolloutSpec& spec, const Action& action) {
  RolloutResult result;
  result.final_state = *spec.start_state;
  result.u_path.reserve(spec.horizon);

  Vec3 u = spec.start_u;
  try {
    for (int k = 0; k < spec.horizon; ++k) {
      u += action.direction * action.step_size;
      result.u_path.push_back(u);
      step_in_place(result.final_state, *spec.constraints, u, spec.solver);
    }
  } catch (const SolverDivergence&) {
    result.loss = kInf;
    result.ok = false;
    return result;
  }

  result.terms = mpc_loss_terms(result.final_state.positions, *spec.book, result.u_path, action,
                                spec.prev_action, spec.loss, *spec.sdf);
  result.loss = result.terms.total;
  result.ok = true;
  return result;
}

GradientResult loss_gradient(const RolloutSpec& spec, const Action& action, double delta) {
  GradientResult g;
  for (int c = 0; c < 3; ++c) {
    Action plus = action, minus = action;
    plus.direction[c] += delta;
    minus.direction[c] -= delta;
    if (plus.direction.norm() < 1e-12 || minus.direction.norm() < 1e-12) return g;
    plus.direction.normalize();
    minus.direction.normalize();
    const RolloutResult rp = rollout(spec, plus);
    const RolloutResult rm = rollout(spec, minus);
    if (!rp.ok || !rm.ok) return g;
    g.gradient[c] = (rp.loss - rm.loss) / (2.0 * delta);
  }
  g.ok = true;
  return g;
}

}  // namespace peelsim
