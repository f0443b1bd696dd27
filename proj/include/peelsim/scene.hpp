#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "peelsim/core.hpp"

namespace peelsim {

enum class GeometryKind { FlatSheet, Cylinder };
enum class PinSpec { Corners, Edges, None };
enum class GraspSite { MinMin, MinMax, MaxMin, MaxMax };

struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_, const std::string& what)
      : std::runtime_error(what), field(std::move(field_)) {}
};

// Declarative scene description. All lengths in meters (the loader converts
// tagged units such as "7 in" or "2 mm" on read).
struct SceneConfig {
  int skin_rows = 15, skin_cols = 15;
  double skin_extent_x = 0.1778, skin_extent_y = 0.1778;  // 7 in x 7 in
  int dressing_rows = 9, dressing_cols = 9;
  double dressing_extent_x = 0.1016, dressing_extent_y = 0.1016;  // 4 in x 4 in
  double dressing_offset_x = 0.0381, dressing_offset_y = 0.0381;
  GeometryKind geometry = GeometryKind::FlatSheet;
  double cylinder_radius = 0.06;
  double cylinder_arc_span = 3.14159265358979323846;

  double skin_stiffness = 5.0;
  double dressing_stiffness = 50.0;
  double dressing_bending_stiffness = 20.0;  // second-neighbor bracing; 0 disables
  double adhesion_stiffness = 0.5;
  double fracture_threshold_eps = 2e-6;

  // Adhesive footprint in dressing-local coordinates; empty => full underside.
  std::optional<std::array<double, 4>> adhesive_window;  // x0, y0, x1, y1

  PinSpec pinned = PinSpec::Corners;
  int landmark_rows = 6, landmark_cols = 8;
  GraspSite grasp_site = GraspSite::MinMin;
  double sdf_margin_sigma = 0.005;
  // Angle between the first peel direction and the grasp normal, toward the
  // outward tangent (0 = straight off the surface).
  double initial_peel_blend_deg = 45.0;
};

// Undirected, deduplicated edge lists over global particle indices, plus the
// axis-only dressing adjacency used for boundary-layer expansion.
struct ConnectivityGraph {
  std::vector<std::pair<int, int>> skin_edges;
  std::vector<std::pair<int, int>> dressing_edges;
  std::vector<std::pair<int, int>> adhesion_pairs;  // (dressing idx, skin idx)
  std::vector<std::vector<int>> dressing_adjacency;  // local dressing index -> neighbors
  int dressing_begin = 0;
  int dressing_count = 0;

  int dressing_local(int global) const { return global - dressing_begin; }
};

// Analytic SDF of the forbidden region: below the skin plane for the flat
// sheet, inside the shell for the cylinder. Positive outside, 1-Lipschitz.
struct SdfHandle {
  GeometryKind kind = GeometryKind::FlatSheet;
  double plane_z = 0.0;
  Vec3 axis_point = Vec3::Zero();
  Vec3 axis_dir = Vec3::UnitX();
  double radius = 0.0;

  double eval(const Vec3& p) const;
};

struct LandmarkSet {
  std::vector<int> indices;
  std::vector<Vec3> rest_positions;
};

struct Scene {
  SceneConfig config;
  ParticleSystem particles;
  ConstraintSet constraints;
  ConnectivityGraph graph;
  SdfHandle sdf;
  LandmarkSet landmarks;

  int grasp_particle = -1;       // driven dressing particle (global index)
  int grasp_pair = -1;           // adhesion pair index at the grasp corner, -1 if none
  Vec3 grasp_position = Vec3::Zero();
  Vec3 grasp_normal = Vec3::UnitZ();           // outward surface normal at grasp
  Vec3 dressing_center_surface = Vec3::Zero();  // dressing center projected on the skin surface
  Vec3 center_normal = Vec3::UnitZ();
  Vec3 initial_peel_direction = Vec3::UnitZ();
  double diagonal = 1.0;  // initial bounding-box diagonal
};

void validate(const SceneConfig& config);
Scene build_scene(const SceneConfig& config);

double sdf_eval(const SdfHandle& handle, const Vec3& point);

// Full run configuration as read from the YAML config file.
struct LossParams;   // objectives.hpp
struct MpcParams;    // mpc.hpp
struct RunConfig {
  SceneConfig scene;
  SolverParams solver;
  double loss_gamma = 1.0;
  double loss_alpha = 0.1;
  double loss_beta = 0.01;
  bool smoothness_penalizes = false;  // true flips Eq-style -beta*S to +beta*S
  int mpc_num_seeds = 60;
  int mpc_horizon = 10;
  int mpc_gd_iterations = 1;
  double mpc_learning_rate = 0.5;
  double mpc_sample_sigma = 0.05;
  double mpc_step_size = 0.002;
  double mpc_fd_delta = 1e-4;
  int max_steps = 2000;
};

RunConfig load_config(const std::filesystem::path& path);
// Canonical post-conversion echo (SI units); also used for the config digest.
std::string resolved_config_text(const RunConfig& config);
uint64_t config_digest(const RunConfig& config);

}  // namespace peelsim
