#include "peelsim/objectives.hpp"

#include <cmath>

namespace peelsim {

namespace {

double mean_layer_stretch(const std::vector<Vec3>& positions, const AdhesionBook& book,
                          const std::vector<int>& layer) {
  if (layer.empty()) return 0.0;
  double sum = 0.0;
  for (int p : layer) {
    const auto& [d, s] = book.pairs[p];
    sum += (positions[d] - positions[s]).norm();  // rest length 0
  }
  return sum / static_cast<double>(layer.size());
}

}  // namespace

double peel_objective(const std::vector<Vec3>& positions, const AdhesionBook& book, double gamma) {
  return -mean_layer_stretch(positions, book, book.layer1) +
         gamma * mean_layer_stretch(positions, book, book.layer2);
}

double penetration_penalty(const Vec3& u, const SdfHandle& sdf, double sigma) {
  return std::exp(-std::min(sdf.eval(u) - sigma, 0.0));
}

double smoothness(const Action& a_now, const Action& a_prev) {
  return (a_now.direction - a_prev.direction).norm();
}

LossTerms mpc_loss_terms(const std::vector<Vec3>& final_positions, const AdhesionBook& book,
                         std::span<const Vec3> u_path, const Action& a_now, const Action& a_prev,
                         const LossParams& params, const SdfHandle& sdf) {
  LossTerms t;
  t.peel = peel_objective(final_positions, book, params.gamma);
  for (const Vec3& u : u_path) t.penetration += penetration_penalty(u, sdf, params.sigma);
  t.smooth = smoothness(a_now, a_prev);
  const double s_sign = params.smoothness_penalizes ? 1.0 : -1.0;
  t.total = t.peel + params.alpha * t.penetration + s_sign * params.beta * t.smooth;
  return t;
}

double mpc_loss(const std::vector<Vec3>& final_positions, const AdhesionBook& book,
                std::span<const Vec3> u_path, const Action& a_now, const Action& a_prev,
                const LossParams& params, const SdfHandle& sdf) {
  return mpc_loss_terms(final_positions, book, u_path, a_now, a_prev, params, sdf).total;
}

}  // namespace peelsim
