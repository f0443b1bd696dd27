#include "peelsim/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace peelsim {

DisplacementSeries displacement_series(const RunRecord& run, const LandmarkSet& landmarks) {
  if (run.landmark_frames.empty()) throw std::runtime_error("run record has no landmark frames");
  const size_t n = landmarks.indices.size();
  DisplacementSeries series;
  series.reserve(run.landmark_frames.size() - 1);
  // Frame 0 is the rest capture; the series covers the committed steps.
  for (size_t f = 1; f < run.landmark_frames.size(); ++f) {
    const auto& frame = run.landmark_frames[f];
    if (frame.size() != n) throw std::runtime_error("landmark frame size mismatch");
    std::vector<double> row(n);
    for (size_t i = 0; i < n; ++i) row[i] = (frame[i] - landmarks.rest_positions[i]).norm();
    series.push_back(std::move(row));
  }
  return series;
}

double d_max_mm(const DisplacementSeries& series) {
  if (series.empty()) throw std::runtime_error("empty displacement series");
  double m = 0.0;
  for (const auto& row : series) {
    for (double v : row) m = std::max(m, v);
  }
  return m * 1000.0;
}

double d_mean_mm(const DisplacementSeries& series) {
  if (series.empty()) throw std::runtime_error("empty displacement series");
  double sum = 0.0;
  size_t count = 0;
  for (const auto& row : series) {
    for (double v : row) sum += v;
    count += row.size();
  }
  if (count == 0) throw std::runtime_error("empty displacement series");
  return sum / static_cast<double>(count) * 1000.0;
}

namespace {

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  sd = 0.0;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
}

}  // namespace

std::vector<MethodSummary> compare_table(
    const std::map<std::string, std::vector<RunMetricsPair>>& by_method) {
  std::vector<MethodSummary> out;
  for (const auto& [method, runs] : by_method) {
    if (runs.empty()) continue;
    MethodSummary s;
    s.method = method;
    s.n = static_cast<int>(runs.size());
    std::vector<double> dmax, dmean;
    for (const auto& r : runs) {
      dmax.push_back(r.d_max_mm);
      dmean.push_back(r.d_mean_mm);
    }
    mean_std(dmax, s.d_max_mean, s.d_max_std);
    mean_std(dmean, s.d_mean_mean, s.d_mean_std);
    out.push_back(s);
  }
  return out;
}

std::string format_comparison(const std::vector<MethodSummary>& table) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << std::left << std::setw(10) << "method" << std::setw(6) << "n" << std::setw(20)
     << "D_max (mm)" << std::setw(20) << "D_mean (mm)" << "\n";
  for (const auto& s : table) {
    std::ostringstream dmax, dmean;
    dmax << std::fixed << std::setprecision(2) << s.d_max_mean << " +/- " << s.d_max_std;
    dmean << std::fixed << std::setprecision(2) << s.d_mean_mean << " +/- " << s.d_mean_std;
    os << std::left << std::setw(10) << s.method << std::setw(6) << s.n << std::setw(20)
       << dmax.str() << std::setw(20) << dmean.str() << "\n";
  }
  return os.str();
}

std::string comparison_csv(const std::vector<MethodSummary>& table) {
  std::ostringstream os;
  os.precision(17);
  os << "method,n,d_max_mean_mm,d_max_std_mm,d_mean_mean_mm,d_mean_std_mm\n";
  for (const auto& s : table) {
    os << s.method << "," << s.n << "," << s.d_max_mean << "," << s.d_max_std << ","
       << s.d_mean_mean << "," << s.d_mean_std << "\n";
  }
  return os.str();
}

}  // namespace peelsim
