#pragma once

#include <map>
#include <string>
#include <vector>

#include "peelsim/adhesion.hpp"
#include "peelsim/mpc.hpp"
#include "peelsim/objectives.hpp"
#include "peelsim/scene.hpp"

namespace peelsim {

enum class Method { Mpc, Up, Arc };
enum class RunStatus { Complete, Incomplete, Failed };

std::string method_name(Method m);
std::string status_name(RunStatus s);

struct RunLimits {
  int max_steps = 2000;
  int snapshot_every = 5;
};

struct LossRow {
  int step = 0;
  LossTerms terms;
};

struct RunRecord {
  Method method = Method::Mpc;
  uint64_t rng_seed = 0;
  RunStatus status = RunStatus::Failed;
  std::string failure_reason;
  int steps = 0;

  std::vector<Vec3> trajectory;  // u_1 .. u_T (committed end-effector path)
  std::vector<Action> actions;
  std::vector<FractureEvent> fractures;
  // landmark_frames[0] holds rest positions, then one frame per committed step.
  std::vector<std::vector<Vec3>> landmark_frames;
  std::vector<int> snapshot_steps;
  std::vector<std::vector<Vec3>> snapshots;  // decimated full particle states
  std::vector<LossRow> losses;               // MPC runs only
  std::vector<Vec3> final_positions;
  std::map<std::string, std::string> meta;
};

RunRecord run_peel(const Scene& scene, const MpcParams& mpc, const LossParams& loss,
                   const SolverParams& solver, const RunLimits& limits, uint64_t rng_seed);

// Up: straight out along the grasp-point surface normal. Arc: circle in the
// vertical plane through grasp and dressing center, centered at the center's
// surface projection, swept upward and inward. Both share the peel loop's
// predict/fracture/commit machinery.
RunRecord run_baseline(Method kind, const Scene& scene, double step_size,
                       const SolverParams& solver, const RunLimits& limits);

// Open-loop re-simulation of a recorded end-effector path; returns the final
// particle positions (bitwise-reproducible against the recorded run).
std::vector<Vec3> replay(const Scene& scene, const std::vector<Vec3>& trajectory,
                         const SolverParams& solver);

}  // namespace peelsim
