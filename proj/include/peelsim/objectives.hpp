#pragma once

#include <span>
#include <vector>

#include "peelsim/adhesion.hpp"
#include "peelsim/core.hpp"
#include "peelsim/scene.hpp"

namespace peelsim {

struct LossParams {
  double gamma = 1.0;
  double alpha = 0.1;
  double beta = 0.01;
  double sigma = 0.005;  // SDF margin, meters
  // false: -beta*S as printed (direction change rewarded); true: +beta*S.
  bool smoothness_penalizes = false;
};

struct Action {
  Vec3 direction = Vec3::UnitZ();  // unit length
  double step_size = 0.002;
};

struct LossTerms {
  double peel = 0.0;         // H
  double penetration = 0.0;  // sum of P over the path
  double smooth = 0.0;       // S
  double total = 0.0;        // L
};

// H: mean V1 stretch pulled negative, gamma-weighted mean V2 stretch positive.
// Empty layers contribute 0.
double peel_objective(const std::vector<Vec3>& positions, const AdhesionBook& book, double gamma);

// P(u) = exp(-min(phi(u) - sigma, 0)); >= 1, equal to 1 outside the margin.
double penetration_penalty(const Vec3& u, const SdfHandle& sdf, double sigma);

// S = |v_now - v_prev| for unit directions; range [0, 2].
double smoothness(const Action& a_now, const Action& a_prev);

LossTerms mpc_loss_terms(const std::vector<Vec3>& final_positions, const AdhesionBook& book,
                         std::span<const Vec3> u_path, const Action& a_now, const Action& a_prev,
                         const LossParams& params, const SdfHandle& sdf);

double mpc_loss(const std::vector<Vec3>& final_positions, const AdhesionBook& book,
                std::span<const Vec3> u_path, const Action& a_now, const Action& a_prev,
                const LossParams& params, const SdfHandle& sdf);

}  // namespace peelsim
