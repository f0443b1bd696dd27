#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "peelsim/calibrate.hpp"
#include "peelsim/metrics.hpp"
#include "peelsim/peeler.hpp"
#include "peelsim/record_io.hpp"

namespace fs = std::filesystem;
using namespace peelsim;

namespace {

constexpr int kExitIncomplete = 3;

uint64_t derive_seed(uint64_t base, uint64_t rep) {
  uint64_t z = base + 0x9e3779b97f4a7c15ull * (rep + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::string default_out_root() {
  if (const char* env = std::getenv("PEELSIM_OUT_ROOT")) return env;
  return "runs";
}

void append_log(const fs::path& root, const std::string& line) {
  std::ofstream os(root / "peelsim.log", std::ios::app);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  os << now << " " << line << "\n";
}

int cmd_run(const std::string& config_path, const std::string& method_str, int reps,
            uint64_t seed, const std::string& out, int jobs, int snapshot_every, int max_steps) {
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error in field '" << e.field << "': " << e.what() << "\n";
    return 1;
  }
  if (max_steps > 0) config.max_steps = max_steps;

  Method method;
  if (method_str == "mpc") method = Method::Mpc;
  else if (method_str == "up") method = Method::Up;
  else if (method_str == "arc") method = Method::Arc;
  else {
    std::cerr << "unknown method '" << method_str << "'\n";
    return 1;
  }

  const Scene scene = build_scene(config.scene);
  const fs::path root(out);
  fs::create_directories(root);
  append_log(root, "run method=" + method_str + " reps=" + std::to_string(reps) +
                       " config=" + config_path);

  MpcParams mpc;
  mpc.num_seeds = config.mpc_num_seeds;
  mpc.horizon = config.mpc_horizon;
  mpc.gd_iterations = config.mpc_gd_iterations;
  mpc.learning_rate = config.mpc_learning_rate;
  mpc.sample_sigma = config.mpc_sample_sigma;
  mpc.step_size = config.mpc_step_size;
  mpc.fd_delta = config.mpc_fd_delta;

  LossParams loss;
  loss.gamma = config.loss_gamma;
  loss.alpha = config.loss_alpha;
  loss.beta = config.loss_beta;
  loss.sigma = config.scene.sdf_margin_sigma;
  loss.smoothness_penalizes = config.smoothness_penalizes;

  RunLimits limits;
  limits.max_steps = config.max_steps;
  limits.snapshot_every = snapshot_every;

  std::vector<std::string> summaries(reps);
  std::vector<RunStatus> statuses(reps, RunStatus::Failed);
  std::atomic<int> next_rep{0};

  auto worker = [&]() {
    for (;;) {
      const int rep = next_rep.fetch_add(1);
      if (rep >= reps) return;
      const uint64_t rep_seed = derive_seed(seed, rep);
      RunRecord rec;
      if (method == Method::Mpc) {
        rec = run_peel(scene, mpc, loss, config.solver, limits, rep_seed);
      } else {
        rec = run_baseline(method, scene, mpc.step_size, config.solver, limits);
        rec.rng_seed = rep_seed;
      }
      std::ostringstream name;
      name << method_str << "_" << rep << "_" << rep_seed;
      const fs::path dir = root / name.str();
      save_run(dir, config, scene, rec);
      const RunMetrics m = load_metrics(dir / "metrics.json");
      std::ostringstream line;
      line << name.str() << ": status=" << m.status << " steps=" << m.steps
           << " d_max=" << m.d_max_mm << "mm d_mean=" << m.d_mean_mm << "mm";
      summaries[rep] = line.str();
      statuses[rep] = rec.status;
    }
  };

  const int n_workers = std::max(1, std::min(jobs, reps));
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  bool all_complete = true;
  for (int rep = 0; rep < reps; ++rep) {
    std::cout << summaries[rep] << "\n";
    if (statuses[rep] != RunStatus::Complete) all_complete = false;
  }
  return all_complete ? 0 : kExitIncomplete;
}

int cmd_compare(const std::vector<std::string>& run_dirs, const std::string& csv_out) {
  std::map<std::string, std::vector<RunMetricsPair>> by_method;
  std::set<std::string> digests;
  for (const auto& dir_str : run_dirs) {
    const fs::path dir(dir_str);
    std::vector<fs::path> metric_files;
    if (fs::exists(dir / "metrics.json")) metric_files.push_back(dir / "metrics.json");
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_directory() && fs::exists(entry.path() / "metrics.json"))
          metric_files.push_back(entry.path() / "metrics.json");
      }
    }
    if (metric_files.empty()) {
      std::cerr << "no metrics.json under " << dir << "\n";
      return 1;
    }
    for (const auto& f : metric_files) {
      try {
        const RunMetrics m = load_metrics(f);
        by_method[m.method].push_back({m.d_max_mm, m.d_mean_mm});
        digests.insert(m.config_digest);
      } catch (const std::exception& e) {
        std::cerr << "cannot parse " << f << ": " << e.what() << "\n";
        return 1;
      }
    }
  }
  if (digests.size() > 1)
    std::cerr << "warning: comparing runs from different scene configurations\n";

  const auto table = compare_table(by_method);
  std::cout << format_comparison(table);
  if (!csv_out.empty()) {
    std::ofstream os(csv_out);
    os << comparison_csv(table);
    std::cout << "wrote " << csv_out << "\n";
  }
  return 0;
}

int cmd_calibrate(const std::string& config_path, std::vector<double> stiffness_grid,
                  std::vector<double> eps_grid, double lift_mm, const std::string& out_file) {
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error in field '" << e.field << "': " << e.what() << "\n";
    return 1;
  }

  CalibrationParams params;
  if (!stiffness_grid.empty()) params.stiffness_grid = stiffness_grid;
  if (!eps_grid.empty()) params.eps_grid = eps_grid;
  params.visible_lift_mm = lift_mm;
  params.max_steps = config.max_steps;

  const CalibrationResult result = calibrate(config, params);
  std::ostringstream report;
  report.precision(6);
  report << "stiffness,eps,first_fracture_step,lift_mm,completed,meets_criterion\n";
  for (const auto& c : result.candidates) {
    report << c.adhesion_stiffness << "," << c.fracture_eps << "," << c.first_fracture_step << ","
           << c.lift_at_first_fracture_mm << "," << c.completed << "," << c.meets_criterion
           << "\n";
  }
  if (result.chosen >= 0) {
    const auto& c = result.candidates[result.chosen];
    report << "chosen: adhesion_stiffness=" << c.adhesion_stiffness
           << " fracture_threshold_eps=" << c.fracture_eps << "\n";
  } else {
    report << "chosen: none met the criterion; closest candidates listed above\n";
  }
  std::cout << report.str();
  if (!out_file.empty()) {
    std::ofstream os(out_file);
    os << report.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft-body dressing peeling simulator and trajectory optimizer"};
  app.require_subcommand(1);

  std::string config_path, method = "mpc", out = default_out_root(), csv_out, cal_out;
  int reps = 1, jobs = 1, snapshot_every = 5, max_steps = 0;
  uint64_t seed = 0;
  std::vector<std::string> run_dirs;
  std::vector<double> stiffness_grid, eps_grid;
  double lift_mm = 2.0;

  auto* run = app.add_subcommand("run", "execute peeling runs");
  run->add_option("--config", config_path, "scene/run configuration file")->required();
  run->add_option("--method", method, "mpc | up | arc");
  run->add_option("--reps", reps, "number of repetitions");
  run->add_option("--seed", seed, "base RNG seed");
  run->add_option("--out", out, "output root directory");
  run->add_option("--jobs", jobs, "parallel repetition workers");
  run->add_option("--snapshot-every", snapshot_every, "full-state snapshot decimation");
  run->add_option("--max-steps", max_steps, "override the config step limit");

  auto* compare = app.add_subcommand("compare", "compare recorded runs across methods");
  compare->add_option("dirs", run_dirs, "run directories")->required();
  compare->add_option("--csv", csv_out, "write comparison CSV to this path");

  auto* cal = app.add_subcommand("calibrate", "sweep adhesion stiffness and fracture threshold");
  cal->add_option("--config", config_path, "scene/run configuration file")->required();
  cal->add_option("--stiffness", stiffness_grid, "stiffness grid");
  cal->add_option("--eps", eps_grid, "fracture threshold grid");
  cal->add_option("--lift-mm", lift_mm, "visible-lift criterion in millimeters");
  cal->add_option("--out", cal_out, "write the report to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(config_path, method, reps, seed, out, jobs, snapshot_every, max_steps);
    if (compare->parsed()) return cmd_compare(run_dirs, csv_out);
    if (cal->parsed()) return cmd_calibrate(config_path, stiffness_grid, eps_grid, lift_mm, cal_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error in field '" << e.field << "': " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
