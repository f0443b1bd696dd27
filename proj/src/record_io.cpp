#include "peelsim/record_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace peelsim {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.precision(17);
  return os;
}

}  // namespace

void save_run(const fs::path& dir, const RunConfig& config, const Scene& scene,
              const RunRecord& record) {
  fs::create_directories(dir);

  open_out(dir / "config_resolved.yaml") << resolved_config_text(config);

  {
    auto os = open_out(dir / "trajectory.csv");
    os << "step,u_x,u_y,u_z\n";
    for (size_t t = 0; t < record.trajectory.size(); ++t) {
      const Vec3& u = record.trajectory[t];
      os << (t + 1) << "," << u.x() << "," << u.y() << "," << u.z() << "\n";
    }
  }

  {
    auto os = open_out(dir / "fractures.csv");
    os << "step,dressing_index,skin_index,energy\n";
    for (const auto& e : record.fractures)
      os << e.step << "," << e.dressing_index << "," << e.skin_index << "," << e.energy << "\n";
  }

  {
    auto os = open_out(dir / "landmarks.csv");
    os << "step,landmark,x,y,z\n";
    for (size_t f = 0; f < record.landmark_frames.size(); ++f) {
      const auto& frame = record.landmark_frames[f];
      for (size_t i = 0; i < frame.size(); ++i)
        os << f << "," << i << "," << frame[i].x() << "," << frame[i].y() << "," << frame[i].z()
           << "\n";
    }
  }

  if (!record.losses.empty()) {
    auto os = open_out(dir / "losses.csv");
    os << "step,peel_h,penetration_sum,smoothness,total,gamma,alpha,beta\n";
    for (const auto& row : record.losses)
      os << row.step << "," << row.terms.peel << "," << row.terms.penetration << ","
         << row.terms.smooth << "," << row.terms.total << "," << config.loss_gamma << ","
         << config.loss_alpha << "," << config.loss_beta << "\n";
  }

  if (!record.snapshots.empty()) {
    fs::create_directories(dir / "snapshots");
    for (size_t s = 0; s < record.snapshots.size(); ++s) {
      std::ostringstream name;
      name << "frame_" << std::setw(6) << std::setfill('0') << record.snapshot_steps[s] << ".csv";
      export_points_csv(dir / "snapshots" / name.str(), scene.particles, record.snapshots[s]);
    }
  }

  {
    auto os = open_out(dir / "meta.txt");
    for (const auto& [k, v] : record.meta) os << k << ": " << v << "\n";
    if (!record.failure_reason.empty()) os << "failure_reason: " << record.failure_reason << "\n";
  }

  const DisplacementSeries series =
      record.steps > 0 ? displacement_series(record, scene.landmarks) : DisplacementSeries{};
  nlohmann::ordered_json j;
  j["method"] = method_name(record.method);
  j["seed"] = record.rng_seed;
  j["d_max_mm"] = series.empty() ? 0.0 : d_max_mm(series);
  j["d_mean_mm"] = series.empty() ? 0.0 : d_mean_mm(series);
  j["steps"] = record.steps;
  j["fractures"] = record.fractures.size();
  j["status"] = status_name(record.status);
  std::ostringstream digest;
  digest << std::hex << config_digest(config);
  j["config_digest"] = digest.str();
  open_out(dir / "metrics.json") << j.dump(2) << "\n";
}

RunMetrics load_metrics(const fs::path& metrics_json) {
  std::ifstream is(metrics_json);
  if (!is) throw std::runtime_error("cannot read " + metrics_json.string());
  nlohmann::json j = nlohmann::json::parse(is);
  RunMetrics m;
  m.method = j.at("method").get<std::string>();
  m.seed = j.at("seed").get<uint64_t>();
  m.d_max_mm = j.at("d_max_mm").get<double>();
  m.d_mean_mm = j.at("d_mean_mm").get<double>();
  m.steps = j.at("steps").get<int>();
  m.fractures = j.at("fractures").get<int>();
  m.status = j.at("status").get<std::string>();
  m.config_digest = j.at("config_digest").get<std::string>();
  return m;
}

std::vector<Vec3> load_trajectory(const fs::path& trajectory_csv) {
  std::ifstream is(trajectory_csv);
  if (!is) throw std::runtime_error("cannot read " + trajectory_csv.string());
  std::string line;
  std::getline(is, line);  // header
  std::vector<Vec3> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    Vec3 u;
    std::getline(ls, cell, ',');  // step
    for (int c = 0; c < 3; ++c) {
      std::getline(ls, cell, ',');
      u[c] = std::stod(cell);
    }
    out.push_back(u);
  }
  return out;
}

void export_points_csv(const fs::path& path, const ParticleSystem& reference,
                       const std::vector<Vec3>& positions) {
  auto os = open_out(path);
  os << "index,body,x,y,z\n";
  for (size_t i = 0; i < positions.size(); ++i) {
    const char* body = static_cast<int>(i) < reference.dressing_begin ? "skin" : "dressing";
    os << i << "," << body << "," << positions[i].x() << "," << positions[i].y() << ","
       << positions[i].z() << "\n";
  }
}

void export_obj(const fs::path& path, const Scene& scene, const std::vector<Vec3>& positions) {
  auto os = open_out(path);
  for (const auto& p : positions) os << "v " << p.x() << " " << p.y() << " " << p.z() << "\n";
  auto emit_grid = [&](int base, int rows, int cols) {
    for (int r = 0; r + 1 < rows; ++r) {
      for (int c = 0; c + 1 < cols; ++c) {
        const int a = base + r * cols + c + 1;  // OBJ is 1-based
        const int b = a + 1;
        const int d = a + cols;
        const int e = d + 1;
        os << "f " << a << " " << b << " " << e << "\n";
        os << "f " << a << " " << e << " " << d << "\n";
      }
    }
  };
  emit_grid(0, scene.config.skin_rows, scene.config.skin_cols);
  emit_grid(scene.particles.dressing_begin, scene.config.dressing_rows, scene.config.dressing_cols);
}

}  // namespace peelsim
