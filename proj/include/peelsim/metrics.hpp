#pragma once

#include <map>
#include <string>
#include <vector>

#include "peelsim/peeler.hpp"

namespace peelsim {

// [step][landmark] displacement magnitudes from rest, meters.
using DisplacementSeries = std::vector<std::vector<double>>;

DisplacementSeries displacement_series(const RunRecord& run, const LandmarkSet& landmarks);

double d_max_mm(const DisplacementSeries& series);
double d_mean_mm(const DisplacementSeries& series);

struct MethodSummary {
  std::string method;
  int n = 0;
  double d_max_mean = 0.0, d_max_std = 0.0;
  double d_mean_mean = 0.0, d_mean_std = 0.0;
};

struct RunMetricsPair {
  double d_max_mm = 0.0;
  double d_mean_mm = 0.0;
};

// Per-method mean and sample standard deviation (std 0 for n=1).
std::vector<MethodSummary> compare_table(
    const std::map<std::string, std::vector<RunMetricsPair>>& by_method);

std::string format_comparison(const std::vector<MethodSummary>& table);
std::string comparison_csv(const std::vector<MethodSummary>& table);

}  // namespace peelsim
