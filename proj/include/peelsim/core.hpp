#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace peelsim {

using Vec3 = Eigen::Vector3d;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ConstraintKind : uint8_t { SkinInternal, DressingInternal, Adhesion };

// Distance constraint C(xi, xj) = |xi - xj| - rest, weighted by stiffness.
// stiffness == 0 means inactive (fractured adhesion stays in the list).
// stiffness == inf means a hard constraint (compliance 0).
struct Constraint {
  int i = 0;
  int j = 0;
  double rest = 0.0;
  double stiffness = 0.0;
  double compliance = kInf;  // 1 / stiffness, kept in sync via set_stiffness
  double fracture_threshold = kInf;  // adhesion only
  ConstraintKind kind = ConstraintKind::SkinInternal;

  void set_stiffness(double k) {
    stiffness = k;
    compliance = (k == kInf) ? 0.0 : (k > 0.0 ? 1.0 / k : kInf);
  }
};

struct ConstraintSet {
  std::vector<Constraint> items;
};

// Particle state of the whole multi-softbody system. Index layout:
// [0, skin_count)                       skin (base grid then duplicated
//                                       adhesion anchors)
// [dressing_begin, +dressing_count)     dressing
struct ParticleSystem {
  std::vector<Vec3> positions;
  std::vector<double> inv_mass;  // 0 => pinned
  int driven_index = -1;
  int skin_count = 0;
  int dressing_begin = 0;
  int dressing_count = 0;

  int size() const { return static_cast<int>(positions.size()); }
};

struct SolverParams {
  int iterations = 30;
  // Any coordinate magnitude beyond this aborts the solve (10x scene
  // diagonal when built from a scene; inf disables the range check).
  double max_coordinate = kInf;
  bool gravity = false;
  Vec3 gravity_vec = Vec3(0.0, 0.0, -9.81);
};

struct SolverDivergence : std::runtime_error {
  explicit SolverDivergence(const std::string& what) : std::runtime_error(what) {}
};

double constraint_value(const std::vector<Vec3>& positions, const Constraint& c);
double constraint_energy(const std::vector<Vec3>& positions, const Constraint& c);
double total_energy(const std::vector<Vec3>& positions, const ConstraintSet& cs);

// One quasi-static XPBD solve: the driven particle is pinned at u_target,
// free particles are relaxed by Gauss-Seidel constraint projection in the
// fixed stored order. Deterministic for identical inputs.
void step_in_place(ParticleSystem& state, const ConstraintSet& constraints,
                   const Vec3& u_target, const SolverParams& solver);

ParticleSystem step(const ParticleSystem& state, const ConstraintSet& constraints,
                    const Vec3& u_target, const SolverParams& solver);

}  // namespace peelsim
