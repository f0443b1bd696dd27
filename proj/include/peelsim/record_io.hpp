#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "peelsim/metrics.hpp"
#include "peelsim/peeler.hpp"
#include "peelsim/scene.hpp"

namespace peelsim {

struct RunMetrics {
  std::string method;
  uint64_t seed = 0;
  double d_max_mm = 0.0;
  double d_mean_mm = 0.0;
  int steps = 0;
  int fractures = 0;
  std::string status;
  std::string config_digest;
};

// Persists one run as a directory: resolved config echo, trajectory.csv,
// fractures.csv, landmarks.csv, metrics.json, losses.csv (MPC), meta.txt,
// decimated snapshots/.
void save_run(const std::filesystem::path& dir, const RunConfig& config, const Scene& scene,
              const RunRecord& record);

RunMetrics load_metrics(const std::filesystem::path& metrics_json);
std::vector<Vec3> load_trajectory(const std::filesystem::path& trajectory_csv);

// Point-list export: particle index, body tag, x, y, z.
void export_points_csv(const std::filesystem::path& path, const ParticleSystem& reference,
                       const std::vector<Vec3>& positions);
// Triangle-mesh export (Wavefront OBJ) of skin and dressing sheets.
void export_obj(const std::filesystem::path& path, const Scene& scene,
                const std::vector<Vec3>& positions);

}  // namespace peelsim
