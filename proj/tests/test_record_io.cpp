#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "peelsim/record_io.hpp"

using namespace peelsim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("peelsim_io_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

RunConfig small_run_config() {
  RunConfig rc;
  rc.scene.skin_rows = rc.scene.skin_cols = 7;
  rc.scene.skin_extent_x = rc.scene.skin_extent_y = 0.08;
  rc.scene.dressing_rows = rc.scene.dressing_cols = 4;
  rc.scene.dressing_extent_x = rc.scene.dressing_extent_y = 0.03;
  rc.scene.dressing_offset_x = rc.scene.dressing_offset_y = 0.025;
  rc.scene.landmark_rows = rc.scene.landmark_cols = 3;
  rc.scene.skin_stiffness = 5.0;
  rc.scene.dressing_stiffness = 50.0;
  rc.scene.adhesion_stiffness = 0.5;
  rc.scene.fracture_threshold_eps = 2e-6;
  rc.solver.iterations = 12;
  rc.max_steps = 400;
  return rc;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("a saved run round-trips its metrics and trajectory exactly") {
  const RunConfig rc = small_run_config();
  const Scene scene = build_scene(rc.scene);
  RunLimits limits;
  limits.max_steps = rc.max_steps;
  const RunRecord rec = run_baseline(Method::Up, scene, 0.002, rc.solver, limits);
  REQUIRE(rec.status == RunStatus::Complete);

  TempDir tmp;
  save_run(tmp.path, rc, scene, rec);
  for (const char* name : {"config_resolved.yaml", "trajectory.csv", "fractures.csv",
                           "landmarks.csv", "metrics.json", "meta.txt"})
    CHECK(fs::exists(tmp.path / name));

  const RunMetrics m = load_metrics(tmp.path / "metrics.json");
  CHECK(m.method == "up");
  CHECK(m.steps == rec.steps);
  CHECK(m.fractures == static_cast<int>(rec.fractures.size()));
  CHECK(m.status == "complete");
  const DisplacementSeries s = displacement_series(rec, scene.landmarks);
  CHECK(m.d_max_mm == d_max_mm(s));
  CHECK(m.d_mean_mm == d_mean_mm(s));

  const std::vector<Vec3> traj = load_trajectory(tmp.path / "trajectory.csv");
  REQUIRE(traj.size() == rec.trajectory.size());
  for (size_t i = 0; i < traj.size(); ++i)
    CHECK((traj[i] - rec.trajectory[i]).norm() == 0.0);  // 17-digit round trip is exact
}

TEST_CASE("saving the same record twice produces byte-identical files") {
  const RunConfig rc = small_run_config();
  const Scene scene = build_scene(rc.scene);
  RunLimits limits;
  limits.max_steps = rc.max_steps;
  const RunRecord rec = run_baseline(Method::Up, scene, 0.002, rc.solver, limits);

  TempDir a, b;
  save_run(a.path, rc, scene, rec);
  save_run(b.path, rc, scene, rec);
  for (const char* name : {"config_resolved.yaml", "trajectory.csv", "fractures.csv",
                           "landmarks.csv", "metrics.json"})
    CHECK(slurp(a.path / name) == slurp(b.path / name));
}

TEST_CASE("the metrics digest matches the resolved config digest") {
  const RunConfig rc = small_run_config();
  const Scene scene = build_scene(rc.scene);
  RunLimits limits;
  limits.max_steps = 20;
  const RunRecord rec = run_baseline(Method::Up, scene, 0.002, rc.solver, limits);
  TempDir tmp;
  save_run(tmp.path, rc, scene, rec);
  const RunMetrics m = load_metrics(tmp.path / "metrics.json");
  std::ostringstream expect;
  expect << std::hex << config_digest(rc);
  CHECK(m.config_digest == expect.str());
}

TEST_CASE("snapshots are written at the decimation interval") {
  const RunConfig rc = small_run_config();
  const Scene scene = build_scene(rc.scene);
  RunLimits limits;
  limits.max_steps = 20;
  limits.snapshot_every = 4;
  const RunRecord rec = run_baseline(Method::Up, scene, 0.002, rc.solver, limits);
  TempDir tmp;
  save_run(tmp.path, rc, scene, rec);
  size_t files = 0;
  if (fs::exists(tmp.path / "snapshots"))
    for (const auto& e : fs::directory_iterator(tmp.path / "snapshots")) files += e.is_regular_file();
  CHECK(files == rec.snapshots.size());
  CHECK(rec.snapshot_steps.size() == rec.snapshots.size());
}

TEST_CASE("point and mesh exports carry one row per particle") {
  const RunConfig rc = small_run_config();
  const Scene scene = build_scene(rc.scene);
  TempDir tmp;
  export_points_csv(tmp.path / "points.csv", scene.particles, scene.particles.positions);
  export_obj(tmp.path / "mesh.obj", scene, scene.particles.positions);

  std::ifstream pts(tmp.path / "points.csv");
  std::string line;
  int rows = 0;
  bool header = true;
  while (std::getline(pts, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (!line.empty()) ++rows;
  }
  CHECK(rows == scene.particles.size());

  std::ifstream obj(tmp.path / "mesh.obj");
  int verts = 0, faces = 0;
  while (std::getline(obj, line)) {
    if (line.rfind("v ", 0) == 0) ++verts;
    if (line.rfind("f ", 0) == 0) ++faces;
  }
  CHECK(verts == scene.particles.size());
  CHECK(faces > 0);
}
