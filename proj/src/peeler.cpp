#include "peelsim/peeler.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

namespace peelsim {

std::string method_name(Method m) {
  switch (m) {
    case Method::Mpc: return "mpc";
    case Method::Up: return "up";
    case Method::Arc: return "arc";
  }
  return "?";
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Complete: return "complete";
    case RunStatus::Incomplete: return "incomplete";
    case RunStatus::Failed: return "failed";
  }
  return "?";
}

namespace {

std::vector<Vec3> landmark_frame(const Scene& scene, const std::vector<Vec3>& positions) {
  std::vector<Vec3> out;
  out.reserve(scene.landmarks.indices.size());
  for (int idx : scene.landmarks.indices) out.push_back(positions[idx]);
  return out;
}

// Supplies the next end-effector target; may record the chosen action and
// per-step loss terms.
using Controller = std::function<Vec3(int step, const ParticleSystem& state,
                                      const ConstraintSet& constraints, const AdhesionBook& book,
                                      RunRecord& rec)>;

RunRecord run_loop(Method method, const Scene& scene, const SolverParams& solver,
                   const RunLimits& limits, uint64_t rng_seed, const Controller& controller) {
  RunRecord rec;
  rec.method = method;
  rec.rng_seed = rng_seed;
  rec.meta["grasp_bootstrap"] = "grasped corner pair fractured at t=0";

  ParticleSystem state = scene.particles;
  ConstraintSet constraints = scene.constraints;
  AdhesionBook book = make_adhesion_book(scene);

  SolverParams sp = solver;
  if (sp.max_coordinate == kInf) sp.max_coordinate = 10.0 * scene.diagonal;

  if (scene.grasp_pair >= 0 && book.alive[scene.grasp_pair]) {
    fracture_pair(scene.grasp_pair, constraints, book);
    rec.fractures.push_back({0, book.pairs[scene.grasp_pair].first,
                             book.pairs[scene.grasp_pair].second, 0.0});
  }

  rec.landmark_frames.push_back(landmark_frame(scene, state.positions));

  int t = 0;
  try {
    while (!book.all_detached() && t < limits.max_steps) {
      boundary_layers(book, scene.graph);

      const Vec3 u_next = controller(t, state, constraints, book, rec);

      // Predict, fracture on the prediction, then re-solve from the same
      // state with the updated stiffness.
      const ParticleSystem predicted = step(state, constraints, u_next, sp);
      auto events = update_adhesion(predicted.positions, constraints, book, t + 1);
      rec.fractures.insert(rec.fractures.end(), events.begin(), events.end());
      state = step(state, constraints, u_next, sp);

      rec.trajectory.push_back(u_next);
      rec.landmark_frames.push_back(landmark_frame(scene, state.positions));
      ++t;
      if (limits.snapshot_every > 0 && t % limits.snapshot_every == 0) {
        rec.snapshot_steps.push_back(t);
        rec.snapshots.push_back(state.positions);
      }
    }
    rec.status = book.all_detached() ? RunStatus::Complete : RunStatus::Incomplete;
  } catch (const std::exception& e) {
    rec.status = RunStatus::Failed;
    rec.failure_reason = e.what();
  }

  rec.steps = t;
  rec.final_positions = state.positions;
  rec.meta["detached_pairs"] = std::to_string(book.detached.size());
  rec.meta["total_pairs"] = std::to_string(book.pairs.size());
  return rec;
}

}  // namespace

RunRecord run_peel(const Scene& scene, const MpcParams& mpc, const LossParams& loss,
                   const SolverParams& solver, const RunLimits& limits, uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  Action prev{scene.initial_peel_direction, mpc.step_size};

  auto controller = [&](int step_index, const ParticleSystem& state,
                        const ConstraintSet& constraints, const AdhesionBook& book,
                        RunRecord& rec) {
    const MpcStepResult r =
        mpc_step(book, prev, state, constraints, mpc, scene.sdf, loss, solver, rng);
    prev = r.chosen;
    rec.actions.push_back(r.chosen);
    rec.losses.push_back({step_index, r.diag.chosen_terms});
    return r.next_u;
  };

  return run_loop(Method::Mpc, scene, solver, limits, rng_seed, controller);
}

RunRecord run_baseline(Method kind, const Scene& scene, double step_size,
                       const SolverParams& solver, const RunLimits& limits) {
  Controller controller;

  if (kind == Method::Up) {
    const Vec3 dir = scene.grasp_normal;
    controller = [&scene, dir, step_size](int, const ParticleSystem& state, const ConstraintSet&,
                                          const AdhesionBook&, RunRecord& rec) {
      const Vec3 u = state.positions[state.driven_index];
      rec.actions.push_back({dir, step_size});
      return Vec3(u + dir * step_size);
    };
  } else if (kind == Method::Arc) {
    // Circle through the grasp point around the dressing center's surface
    // projection, in the plane spanned by (grasp - center) and the center
    // normal, swept from the surface upward toward the center.
    const Vec3 center = scene.dressing_center_surface;
    Vec3 e1 = scene.grasp_position - center;
    const double radius = std::max(e1.norm(), 1e-9);
    e1 /= radius;
    Vec3 e2 = scene.center_normal;
    e2 -= e2.dot(e1) * e1;
    e2.normalize();
    const double dtheta = step_size / radius;
    auto theta = std::make_shared<double>(0.0);

    controller = [center, e1, e2, radius, dtheta, step_size, theta](
                     int, const ParticleSystem& state, const ConstraintSet&, const AdhesionBook&,
                     RunRecord& rec) {
      *theta += dtheta;
      const Vec3 target =
          center + radius * (std::cos(*theta) * e1 + std::sin(*theta) * e2);
      const Vec3 u = state.positions[state.driven_index];
      Vec3 dir = target - u;
      if (dir.norm() > 1e-12) dir.normalize();
      rec.actions.push_back({dir, step_size});
      return target;
    };
  } else {
    throw std::invalid_argument("run_baseline expects Up or Arc");
  }

  RunRecord rec = run_loop(kind, scene, solver, limits, 0, controller);
  if (kind == Method::Arc) {
    std::ostringstream os;
    os << "circle center at dressing-center surface projection, radius "
       << (scene.grasp_position - scene.dressing_center_surface).norm()
       << " m, plane spanned by grasp->center and surface normal, angular rate step_size/radius";
    rec.meta["arc_interpretation"] = os.str();
  }
  return rec;
}

std::vector<Vec3> replay(const Scene& scene, const std::vector<Vec3>& trajectory,
                         const SolverParams& solver) {
  size_t next = 0;
  auto controller = [&](int, const ParticleSystem&, const ConstraintSet&, const AdhesionBook&,
                        RunRecord&) {
    if (next >= trajectory.size()) throw std::runtime_error("replay ran past the recorded path");
    return trajectory[next++];
  };
  RunLimits limits;
  limits.max_steps = static_cast<int>(trajectory.size());
  limits.snapshot_every = 0;
  const RunRecord rec = run_loop(Method::Mpc, scene, solver, limits, 0, controller);
  return rec.final_positions;
}

}  // namespace peelsim
