#include <cmath>
#include <random>

#include "doctest.h"
#include "peelsim/metrics.hpp"

using namespace peelsim;

namespace {

RunRecord record_with_frames(const std::vector<std::vector<Vec3>>& frames) {
  RunRecord rec;
  rec.landmark_frames = frames;
  rec.steps = static_cast<int>(frames.size()) - 1;
  return rec;
}

LandmarkSet landmarks_for(const std::vector<Vec3>& rest) {
  LandmarkSet lm;
  for (size_t i = 0; i < rest.size(); ++i) lm.indices.push_back(static_cast<int>(i));
  lm.rest_positions = rest;
  return lm;
}

}  // namespace

TEST_CASE("displacements are euclidean distances from the rest frame, in order") {
  const std::vector<Vec3> rest = {Vec3(0, 0, 0), Vec3(1, 0, 0)};
  const std::vector<std::vector<Vec3>> frames = {
      rest,
      {Vec3(0, 0, 0.003), Vec3(1, 0.004, 0)},
      {Vec3(0, 0, 0), Vec3(1, 0, 0.005)},
  };
  const DisplacementSeries s = displacement_series(record_with_frames(frames), landmarks_for(rest));
  REQUIRE(s.size() == 2);  // rest frame excluded
  REQUIRE(s[0].size() == 2);
  CHECK(s[0][0] == doctest::Approx(0.003).epsilon(1e-12));
  CHECK(s[0][1] == doctest::Approx(0.004).epsilon(1e-12));
  CHECK(s[1][0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s[1][1] == doctest::Approx(0.005).epsilon(1e-12));
}

TEST_CASE("d_max and d_mean match a written-out example in millimeters") {
  // Displacements (m): step 1 -> {0.001, 0.003}, step 2 -> {0.002, 0.002}.
  const DisplacementSeries s = {{0.001, 0.003}, {0.002, 0.002}};
  CHECK(d_max_mm(s) == doctest::Approx(3.0).epsilon(1e-12));
  // Mean over all step-landmark cells: (1+3+2+2)/4 = 2 mm.
  CHECK(d_mean_mm(s) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("metrics agree with a brute-force oracle on random series") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> d(0.0, 0.01);
  for (int trial = 0; trial < 25; ++trial) {
    DisplacementSeries s(1 + trial % 7, std::vector<double>(1 + trial % 5));
    double mx = 0.0, sum = 0.0;
    int n = 0;
    for (auto& row : s)
      for (auto& v : row) {
        v = d(rng);
        mx = std::max(mx, v);
        sum += v;
        ++n;
      }
    CHECK(d_max_mm(s) == doctest::Approx(mx * 1000.0).epsilon(1e-12));
    CHECK(d_mean_mm(s) == doctest::Approx(sum / n * 1000.0).epsilon(1e-12));
    CHECK(d_max_mm(s) >= d_mean_mm(s) - 1e-15);
  }
}

TEST_CASE("a rigid translation of every frame displaces all landmarks equally") {
  const std::vector<Vec3> rest = {Vec3(0, 0, 0), Vec3(0.02, 0, 0), Vec3(0, 0.02, 0)};
  const Vec3 shift(0.001, -0.002, 0.002);
  std::vector<std::vector<Vec3>> frames = {rest};
  for (int t = 0; t < 3; ++t) {
    std::vector<Vec3> f;
    for (const auto& p : rest) f.push_back(p + shift);
    frames.push_back(f);
  }
  const DisplacementSeries s = displacement_series(record_with_frames(frames), landmarks_for(rest));
  const double mag = shift.norm() * 1000.0;
  CHECK(d_max_mm(s) == doctest::Approx(mag).epsilon(1e-12));
  CHECK(d_mean_mm(s) == doctest::Approx(mag).epsilon(1e-12));
}

TEST_CASE("empty series are rejected") {
  CHECK_THROWS(d_max_mm({}));
  CHECK_THROWS(d_mean_mm({}));
}

TEST_CASE("the comparison table reports sample mean and standard deviation") {
  std::map<std::string, std::vector<RunMetricsPair>> by_method;
  by_method["up"] = {{4.0, 1.0}, {6.0, 3.0}};
  by_method["mpc"] = {{2.0, 1.5}};
  const auto table = compare_table(by_method);
  REQUIRE(table.size() == 2);
  const auto& mpc = table[0].method == "mpc" ? table[0] : table[1];
  const auto& up = table[0].method == "up" ? table[0] : table[1];
  CHECK(up.n == 2);
  CHECK(up.d_max_mean == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(up.d_max_std == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(up.d_mean_mean == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(up.d_mean_std == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(mpc.n == 1);
  CHECK(mpc.d_max_std == 0.0);
  CHECK(mpc.d_mean_mean == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("formatting includes every method and csv has a header row") {
  std::map<std::string, std::vector<RunMetricsPair>> by_method;
  by_method["up"] = {{4.0, 1.0}};
  by_method["arc"] = {{5.0, 2.0}};
  const auto table = compare_table(by_method);
  const std::string text = format_comparison(table);
  CHECK(text.find("up") != std::string::npos);
  CHECK(text.find("arc") != std::string::npos);
  const std::string csv = comparison_csv(table);
  CHECK(csv.find("method") != std::string::npos);
  CHECK(csv.find("\n") != std::string::npos);
}
