#include "peelsim/scene.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

namespace peelsim {

namespace {

// Shared parameterization: params (px, py) in [0, ex] x [0, ey] map onto the
// skin surface, centered. For the cylinder, py is arc length on the shell.
Vec3 surface_point(const SceneConfig& cfg, double px, double py) {
  const double cx = px - 0.5 * cfg.skin_extent_x;
  const double cy = py - 0.5 * cfg.skin_extent_y;
  if (cfg.geometry == GeometryKind::FlatSheet) return Vec3(cx, cy, 0.0);
  const double theta = cy / cfg.cylinder_radius;
  return Vec3(cx, cfg.cylinder_radius * std::sin(theta),
              cfg.cylinder_radius * std::cos(theta));
}

Vec3 surface_normal(const SceneConfig& cfg, double /*px*/, double py) {
  if (cfg.geometry == GeometryKind::FlatSheet) return Vec3::UnitZ();
  const double theta = (py - 0.5 * cfg.skin_extent_y) / cfg.cylinder_radius;
  return Vec3(0.0, std::sin(theta), std::cos(theta));
}

void add_edge(std::vector<std::pair<int, int>>& edges, int a, int b) {
  if (a > b) std::swap(a, b);
  edges.emplace_back(a, b);
}

void dedupe(std::vector<std::pair<int, int>>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

double SdfHandle::eval(const Vec3& p) const {
  if (kind == GeometryKind::FlatSheet) return p.z() - plane_z;
  const Vec3 rel = p - axis_point;
  const Vec3 radial = rel - rel.dot(axis_dir) * axis_dir;
  return radial.norm() - radius;
}

double sdf_eval(const SdfHandle& handle, const Vec3& point) { return handle.eval(point); }

void validate(const SceneConfig& c) {
  if (c.skin_rows < 2 || c.skin_cols < 2) throw ConfigError("skin_grid", "skin grid counts must be >= 2");
  if (c.dressing_rows < 2 || c.dressing_cols < 2)
    throw ConfigError("dressing_grid", "dressing grid counts must be >= 2");
  if (c.skin_extent_x <= 0 || c.skin_extent_y <= 0)
    throw ConfigError("skin_extent", "skin extents must be positive");
  if (c.dressing_extent_x <= 0 || c.dressing_extent_y <= 0)
    throw ConfigError("dressing_extent", "dressing extents must be positive");
  if (c.adhesion_stiffness <= 0) throw ConfigError("adhesion_stiffness", "adhesion stiffness must be > 0");
  if (c.dressing_bending_stiffness < 0)
    throw ConfigError("dressing_bending_stiffness", "bending stiffness must be >= 0");
  if (c.initial_peel_blend_deg < 0 || c.initial_peel_blend_deg > 90)
    throw ConfigError("initial_peel_blend_deg", "initial peel blend angle must be in [0, 90] degrees");
  if (c.fracture_threshold_eps <= 0)
    throw ConfigError("fracture_threshold_eps", "fracture threshold must be > 0");
  if (c.dressing_offset_x < -1e-12 || c.dressing_offset_y < -1e-12 ||
      c.dressing_offset_x + c.dressing_extent_x > c.skin_extent_x + 1e-12 ||
      c.dressing_offset_y + c.dressing_extent_y > c.skin_extent_y + 1e-12)
    throw ConfigError("dressing_extent", "dressing footprint must lie within the skin extent");
  if (c.geometry == GeometryKind::Cylinder) {
    if (c.cylinder_radius <= 0) throw ConfigError("geometry", "cylinder radius must be > 0");
    if (c.skin_extent_y > c.cylinder_radius * c.cylinder_arc_span + 1e-12)
      throw ConfigError("skin_extent", "skin arc extent exceeds cylinder arc span");
  }
  if (c.landmark_rows < 1 || c.landmark_cols < 1)
    throw ConfigError("landmark_grid", "landmark grid counts must be >= 1");
  if (c.adhesive_window) {
    const auto& w = *c.adhesive_window;
    if (w[0] < 0 || w[1] < 0 || w[2] > c.dressing_extent_x || w[3] > c.dressing_extent_y ||
        w[0] >= w[2] || w[1] >= w[3])
      throw ConfigError("adhesive_window", "adhesive window must be a sub-rectangle of the dressing");
  }
}

Scene build_scene(const SceneConfig& cfg) {
  validate(cfg);
  Scene scene;
  scene.config = cfg;

  const int sr = cfg.skin_rows, sc = cfg.skin_cols;
  const int dr = cfg.dressing_rows, dc = cfg.dressing_cols;
  const double ex = cfg.skin_extent_x, ey = cfg.skin_extent_y;

  auto& ps = scene.particles;
  auto skin_node = [&](int r, int c) { return r * sc + c; };

  // Skin base grid.
  std::vector<std::array<double, 2>> skin_params;
  for (int r = 0; r < sr; ++r) {
    for (int c = 0; c < sc; ++c) {
      const double px = ex * r / (sr - 1);
      const double py = ey * c / (sc - 1);
      skin_params.push_back({px, py});
      ps.positions.push_back(surface_point(cfg, px, py));
    }
  }

  auto& g = scene.graph;
  for (int r = 0; r < sr; ++r) {
    for (int c = 0; c < sc; ++c) {
      if (r + 1 < sr) add_edge(g.skin_edges, skin_node(r, c), skin_node(r + 1, c));
      if (c + 1 < sc) add_edge(g.skin_edges, skin_node(r, c), skin_node(r, c + 1));
      if (r + 1 < sr && c + 1 < sc) {
        add_edge(g.skin_edges, skin_node(r, c), skin_node(r + 1, c + 1));
        add_edge(g.skin_edges, skin_node(r, c + 1), skin_node(r + 1, c));
      }
    }
  }
  dedupe(g.skin_edges);

  // Dressing grid in param space; adhesive footprint selection.
  std::array<double, 4> window = {0.0, 0.0, cfg.dressing_extent_x, cfg.dressing_extent_y};
  if (cfg.adhesive_window) window = *cfg.adhesive_window;

  std::vector<std::array<double, 2>> dress_params(dr * dc);
  std::vector<bool> adhesive(dr * dc, false);
  for (int r = 0; r < dr; ++r) {
    for (int c = 0; c < dc; ++c) {
      const double lx = cfg.dressing_extent_x * r / (dr - 1);
      const double ly = cfg.dressing_extent_y * c / (dc - 1);
      dress_params[r * dc + c] = {cfg.dressing_offset_x + lx, cfg.dressing_offset_y + ly};
      adhesive[r * dc + c] = lx >= window[0] - 1e-12 && lx <= window[2] + 1e-12 &&
                             ly >= window[1] - 1e-12 && ly <= window[3] + 1e-12;
    }
  }

  // Duplicated skin particles under every adhesive dressing particle, anchored
  // into the enclosing skin cell.
  const int n_base = sr * sc;
  std::vector<int> dup_of(dr * dc, -1);
  std::vector<std::pair<int, int>> anchor_edges;
  for (int d = 0; d < dr * dc; ++d) {
    if (!adhesive[d]) continue;
    const auto [px, py] = dress_params[d];
    const int dup = static_cast<int>(ps.positions.size());
    dup_of[d] = dup;
    ps.positions.push_back(surface_point(cfg, px, py));
    const int r0 = std::clamp(static_cast<int>(px / ex * (sr - 1)), 0, sr - 2);
    const int c0 = std::clamp(static_cast<int>(py / ey * (sc - 1)), 0, sc - 2);
    std::set<int> corners = {skin_node(r0, c0), skin_node(r0 + 1, c0), skin_node(r0, c0 + 1),
                             skin_node(r0 + 1, c0 + 1)};
    for (int corner : corners) add_edge(anchor_edges, dup, corner);
  }
  dedupe(anchor_edges);
  g.skin_edges.insert(g.skin_edges.end(), anchor_edges.begin(), anchor_edges.end());

  ps.skin_count = static_cast<int>(ps.positions.size());
  ps.dressing_begin = ps.skin_count;
  ps.dressing_count = dr * dc;
  g.dressing_begin = ps.dressing_begin;
  g.dressing_count = ps.dressing_count;

  auto dress_node = [&](int r, int c) { return ps.dressing_begin + r * dc + c; };
  for (int d = 0; d < dr * dc; ++d) {
    const auto [px, py] = dress_params[d];
    ps.positions.push_back(surface_point(cfg, px, py));
  }

  g.dressing_adjacency.assign(dr * dc, {});
  for (int r = 0; r < dr; ++r) {
    for (int c = 0; c < dc; ++c) {
      if (r + 1 < dr) add_edge(g.dressing_edges, dress_node(r, c), dress_node(r + 1, c));
      if (c + 1 < dc) add_edge(g.dressing_edges, dress_node(r, c), dress_node(r, c + 1));
      if (r + 1 < dr && c + 1 < dc) {
        add_edge(g.dressing_edges, dress_node(r, c), dress_node(r + 1, c + 1));
        add_edge(g.dressing_edges, dress_node(r, c + 1), dress_node(r + 1, c));
      }
      const int local = r * dc + c;
      if (r > 0) g.dressing_adjacency[local].push_back(local - dc);
      if (r + 1 < dr) g.dressing_adjacency[local].push_back(local + dc);
      if (c > 0) g.dressing_adjacency[local].push_back(local - 1);
      if (c + 1 < dc) g.dressing_adjacency[local].push_back(local + 1);
    }
  }
  dedupe(g.dressing_edges);

  for (int d = 0; d < dr * dc; ++d) {
    if (dup_of[d] >= 0) g.adhesion_pairs.emplace_back(ps.dressing_begin + d, dup_of[d]);
  }

  // Masses and pins.
  ps.inv_mass.assign(ps.positions.size(), 1.0);
  auto pin = [&](int idx) { ps.inv_mass[idx] = 0.0; };
  if (cfg.pinned == PinSpec::Corners) {
    pin(skin_node(0, 0));
    pin(skin_node(0, sc - 1));
    pin(skin_node(sr - 1, 0));
    pin(skin_node(sr - 1, sc - 1));
  } else if (cfg.pinned == PinSpec::Edges) {
    for (int r = 0; r < sr; ++r) {
      for (int c = 0; c < sc; ++c) {
        if (r == 0 || c == 0 || r == sr - 1 || c == sc - 1) pin(skin_node(r, c));
      }
    }
  }

  // Constraints in fixed solve order: skin, dressing, adhesion.
  auto push_distance = [&](int a, int b, double stiffness, ConstraintKind kind) {
    Constraint c;
    c.i = a;
    c.j = b;
    c.rest = (ps.positions[a] - ps.positions[b]).norm();
    c.set_stiffness(stiffness);
    c.kind = kind;
    scene.constraints.items.push_back(c);
  };
  for (auto [a, b] : g.skin_edges) push_distance(a, b, cfg.skin_stiffness, ConstraintKind::SkinInternal);
  for (auto [a, b] : g.dressing_edges)
    push_distance(a, b, cfg.dressing_stiffness, ConstraintKind::DressingInternal);
  // Second-neighbor bracing along rows and columns resists folding, so an
  // orthogonal pull at the grasp corner loads a broad adhesive area instead
  // of hinging at the peel front. Not part of the boundary-expansion graph.
  if (cfg.dressing_bending_stiffness > 0.0) {
    for (int r = 0; r < dr; ++r) {
      for (int c = 0; c < dc; ++c) {
        if (r + 2 < dr)
          push_distance(dress_node(r, c), dress_node(r + 2, c), cfg.dressing_bending_stiffness,
                        ConstraintKind::DressingInternal);
        if (c + 2 < dc)
          push_distance(dress_node(r, c), dress_node(r, c + 2), cfg.dressing_bending_stiffness,
                        ConstraintKind::DressingInternal);
      }
    }
  }
  for (auto [d, s] : g.adhesion_pairs) {
    Constraint c;
    c.i = d;
    c.j = s;
    c.rest = 0.0;
    c.set_stiffness(cfg.adhesion_stiffness);
    c.fracture_threshold = cfg.fracture_threshold_eps;
    c.kind = ConstraintKind::Adhesion;
    scene.constraints.items.push_back(c);
  }

  // Landmarks: skin base particles nearest a regular landmark-grid sampling.
  std::set<int> used;
  for (int i = 0; i < cfg.landmark_rows; ++i) {
    for (int j = 0; j < cfg.landmark_cols; ++j) {
      const double tx = ex * (i + 0.5) / cfg.landmark_rows;
      const double ty = ey * (j + 0.5) / cfg.landmark_cols;
      int best = -1;
      double best_d = kInf;
      for (int b = 0; b < n_base; ++b) {
        const double dx = skin_params[b][0] - tx;
        const double dy = skin_params[b][1] - ty;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d) {
          best_d = d2;
          best = b;
        }
      }
      if (!used.insert(best).second)
        throw ConfigError("landmark_grid", "skin grid too coarse to host the landmark grid");
      scene.landmarks.indices.push_back(best);
      scene.landmarks.rest_positions.push_back(ps.positions[best]);
    }
  }

  // Grasp site.
  int gr = 0, gc = 0;
  switch (cfg.grasp_site) {
    case GraspSite::MinMin: gr = 0; gc = 0; break;
    case GraspSite::MinMax: gr = 0; gc = dc - 1; break;
    case GraspSite::MaxMin: gr = dr - 1; gc = 0; break;
    case GraspSite::MaxMax: gr = dr - 1; gc = dc - 1; break;
  }
  scene.grasp_particle = dress_node(gr, gc);
  ps.driven_index = scene.grasp_particle;
  scene.grasp_position = ps.positions[scene.grasp_particle];
  for (size_t p = 0; p < g.adhesion_pairs.size(); ++p) {
    if (g.adhesion_pairs[p].first == scene.grasp_particle) scene.grasp_pair = static_cast<int>(p);
  }

  const auto [gpx, gpy] = dress_params[gr * dc + gc];
  scene.grasp_normal = surface_normal(cfg, gpx, gpy);
  const double cpx = cfg.dressing_offset_x + 0.5 * cfg.dressing_extent_x;
  const double cpy = cfg.dressing_offset_y + 0.5 * cfg.dressing_extent_y;
  scene.dressing_center_surface = surface_point(cfg, cpx, cpy);
  scene.center_normal = surface_normal(cfg, cpx, cpy);

  Vec3 away = scene.grasp_position - scene.dressing_center_surface;
  away -= away.dot(scene.grasp_normal) * scene.grasp_normal;
  if (away.norm() < 1e-12) away = Vec3::UnitX();
  away.normalize();
  const double blend = cfg.initial_peel_blend_deg * M_PI / 180.0;
  scene.initial_peel_direction =
      (std::cos(blend) * scene.grasp_normal + std::sin(blend) * away).normalized();

  // SDF of the forbidden region.
  scene.sdf.kind = cfg.geometry;
  scene.sdf.plane_z = 0.0;
  scene.sdf.axis_point = Vec3::Zero();
  scene.sdf.axis_dir = Vec3::UnitX();
  scene.sdf.radius = cfg.cylinder_radius;

  Vec3 lo = ps.positions.front(), hi = ps.positions.front();
  for (const auto& p : ps.positions) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  scene.diagonal = std::max((hi - lo).norm(), 1e-3);
  return scene;
}

// ---------------------------------------------------------------------------
// Config file loading

namespace {

double unit_factor(const std::string& unit, const std::string& field) {
  if (unit == "m" || unit.empty()) return 1.0;
  if (unit == "cm") return 0.01;
  if (unit == "mm") return 0.001;
  if (unit == "in" || unit == "inch" || unit == "inches") return 0.0254;
  throw ConfigError(field, "unknown length unit '" + unit + "'");
}

double parse_length(const YAML::Node& node, const std::string& field) {
  const std::string raw = node.as<std::string>();
  std::istringstream is(raw);
  double value = 0.0;
  if (!(is >> value)) throw ConfigError(field, "cannot parse length '" + raw + "'");
  std::string unit;
  is >> unit;
  return value * unit_factor(unit, field);
}

void parse_length_pair(const YAML::Node& node, const std::string& field, double& a, double& b) {
  if (!node || !node.IsSequence() || node.size() != 2)
    throw ConfigError(field, "expected a two-element sequence");
  a = parse_length(node[0], field);
  b = parse_length(node[1], field);
}

void parse_int_pair(const YAML::Node& node, const std::string& field, int& a, int& b) {
  if (!node || !node.IsSequence() || node.size() != 2)
    throw ConfigError(field, "expected a two-element sequence");
  a = node[0].as<int>();
  b = node[1].as<int>();
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const std::exception& e) {
    throw ConfigError("config", std::string("cannot read config: ") + e.what());
  }

  RunConfig rc;
  SceneConfig& s = rc.scene;
  if (const auto sn = root["scene"]) {
    if (sn["skin_grid"]) parse_int_pair(sn["skin_grid"], "skin_grid", s.skin_rows, s.skin_cols);
    if (sn["skin_extent"]) parse_length_pair(sn["skin_extent"], "skin_extent", s.skin_extent_x, s.skin_extent_y);
    if (sn["dressing_grid"])
      parse_int_pair(sn["dressing_grid"], "dressing_grid", s.dressing_rows, s.dressing_cols);
    if (sn["dressing_extent"])
      parse_length_pair(sn["dressing_extent"], "dressing_extent", s.dressing_extent_x, s.dressing_extent_y);
    if (sn["dressing_offset"])
      parse_length_pair(sn["dressing_offset"], "dressing_offset", s.dressing_offset_x, s.dressing_offset_y);
    if (sn["geometry"]) {
      const auto gn = sn["geometry"];
      const std::string kind = gn.IsMap() ? gn["kind"].as<std::string>() : gn.as<std::string>();
      if (kind == "flat_sheet") {
        s.geometry = GeometryKind::FlatSheet;
      } else if (kind == "cylinder") {
        s.geometry = GeometryKind::Cylinder;
        if (gn.IsMap() && gn["radius"]) s.cylinder_radius = parse_length(gn["radius"], "geometry");
        if (gn.IsMap() && gn["arc_span"]) s.cylinder_arc_span = gn["arc_span"].as<double>();
      } else {
        throw ConfigError("geometry", "unknown geometry kind '" + kind + "'");
      }
    }
    if (sn["skin_stiffness"]) s.skin_stiffness = sn["skin_stiffness"].as<double>();
    if (sn["dressing_stiffness"]) s.dressing_stiffness = sn["dressing_stiffness"].as<double>();
    if (sn["dressing_bending_stiffness"])
      s.dressing_bending_stiffness = sn["dressing_bending_stiffness"].as<double>();
    if (sn["adhesion_stiffness"]) s.adhesion_stiffness = sn["adhesion_stiffness"].as<double>();
    if (sn["fracture_threshold_eps"]) s.fracture_threshold_eps = sn["fracture_threshold_eps"].as<double>();
    if (sn["adhesive_window"]) {
      const auto wn = sn["adhesive_window"];
      if (!wn.IsSequence() || wn.size() != 4)
        throw ConfigError("adhesive_window", "expected [x0, y0, x1, y1]");
      s.adhesive_window = {{parse_length(wn[0], "adhesive_window"), parse_length(wn[1], "adhesive_window"),
                            parse_length(wn[2], "adhesive_window"), parse_length(wn[3], "adhesive_window")}};
    }
    if (sn["pinned"]) {
      const std::string p = sn["pinned"].as<std::string>();
      if (p == "corners") s.pinned = PinSpec::Corners;
      else if (p == "edges") s.pinned = PinSpec::Edges;
      else if (p == "none") s.pinned = PinSpec::None;
      else throw ConfigError("pinned", "unknown pin spec '" + p + "'");
    }
    if (sn["landmark_grid"])
      parse_int_pair(sn["landmark_grid"], "landmark_grid", s.landmark_rows, s.landmark_cols);
    if (sn["grasp_site"]) {
      const std::string gsp = sn["grasp_site"].as<std::string>();
      if (gsp == "min_min") s.grasp_site = GraspSite::MinMin;
      else if (gsp == "min_max") s.grasp_site = GraspSite::MinMax;
      else if (gsp == "max_min") s.grasp_site = GraspSite::MaxMin;
      else if (gsp == "max_max") s.grasp_site = GraspSite::MaxMax;
      else throw ConfigError("grasp_site", "unknown grasp site '" + gsp + "'");
    }
    if (sn["sdf_margin_sigma"]) s.sdf_margin_sigma = parse_length(sn["sdf_margin_sigma"], "sdf_margin_sigma");
    if (sn["initial_peel_blend_deg"])
      s.initial_peel_blend_deg = sn["initial_peel_blend_deg"].as<double>();
  }

  if (const auto sv = root["solver"]) {
    if (sv["iterations"]) rc.solver.iterations = sv["iterations"].as<int>();
    if (sv["gravity"]) rc.solver.gravity = sv["gravity"].as<bool>();
    if (rc.solver.iterations < 1) throw ConfigError("solver.iterations", "must be >= 1");
  }

  if (const auto ln = root["loss"]) {
    if (ln["gamma"]) rc.loss_gamma = ln["gamma"].as<double>();
    if (ln["alpha"]) rc.loss_alpha = ln["alpha"].as<double>();
    if (ln["beta"]) rc.loss_beta = ln["beta"].as<double>();
    if (ln["smoothness_sign"]) {
      const std::string m = ln["smoothness_sign"].as<std::string>();
      if (m == "reward") rc.smoothness_penalizes = false;
      else if (m == "penalty") rc.smoothness_penalizes = true;
      else throw ConfigError("smoothness_sign", "expected 'reward' or 'penalty'");
    }
    if (rc.loss_gamma < 0 || rc.loss_alpha < 0 || rc.loss_beta < 0)
      throw ConfigError("loss", "loss weights must be >= 0");
  }

  if (const auto mn = root["mpc"]) {
    if (mn["num_seeds"]) rc.mpc_num_seeds = mn["num_seeds"].as<int>();
    if (mn["horizon"]) rc.mpc_horizon = mn["horizon"].as<int>();
    if (mn["gd_iterations"]) rc.mpc_gd_iterations = mn["gd_iterations"].as<int>();
    if (mn["learning_rate"]) rc.mpc_learning_rate = mn["learning_rate"].as<double>();
    if (mn["sample_sigma"]) rc.mpc_sample_sigma = mn["sample_sigma"].as<double>();
    if (mn["step_size"]) rc.mpc_step_size = parse_length(mn["step_size"], "step_size");
    if (mn["fd_delta"]) rc.mpc_fd_delta = mn["fd_delta"].as<double>();
    if (rc.mpc_num_seeds < 1) throw ConfigError("num_seeds", "must be >= 1");
    if (rc.mpc_horizon < 1) throw ConfigError("horizon", "must be >= 1");
    if (rc.mpc_gd_iterations < 0) throw ConfigError("gd_iterations", "must be >= 0");
    if (rc.mpc_sample_sigma <= 0) throw ConfigError("sample_sigma", "must be > 0");
    if (rc.mpc_step_size <= 0) throw ConfigError("step_size", "must be > 0");
  }

  if (const auto rn = root["run"]) {
    if (rn["max_steps"]) rc.max_steps = rn["max_steps"].as<int>();
    if (rc.max_steps < 1) throw ConfigError("max_steps", "must be >= 1");
  }

  validate(rc.scene);
  return rc;
}

std::string resolved_config_text(const RunConfig& rc) {
  const SceneConfig& s = rc.scene;
  std::ostringstream os;
  os.precision(17);
  os << "scene:\n";
  os << "  skin_grid: [" << s.skin_rows << ", " << s.skin_cols << "]\n";
  os << "  skin_extent: [" << s.skin_extent_x << ", " << s.skin_extent_y << "]\n";
  os << "  dressing_grid: [" << s.dressing_rows << ", " << s.dressing_cols << "]\n";
  os << "  dressing_extent: [" << s.dressing_extent_x << ", " << s.dressing_extent_y << "]\n";
  os << "  dressing_offset: [" << s.dressing_offset_x << ", " << s.dressing_offset_y << "]\n";
  if (s.geometry == GeometryKind::FlatSheet) {
    os << "  geometry: flat_sheet\n";
  } else {
    os << "  geometry: {kind: cylinder, radius: " << s.cylinder_radius
       << ", arc_span: " << s.cylinder_arc_span << "}\n";
  }
  os << "  skin_stiffness: " << s.skin_stiffness << "\n";
  os << "  dressing_stiffness: " << s.dressing_stiffness << "\n";
  os << "  dressing_bending_stiffness: " << s.dressing_bending_stiffness << "\n";
  os << "  adhesion_stiffness: " << s.adhesion_stiffness << "\n";
  os << "  fracture_threshold_eps: " << s.fracture_threshold_eps << "\n";
  if (s.adhesive_window) {
    const auto& w = *s.adhesive_window;
    os << "  adhesive_window: [" << w[0] << ", " << w[1] << ", " << w[2] << ", " << w[3] << "]\n";
  }
  os << "  pinned: "
     << (s.pinned == PinSpec::Corners ? "corners" : s.pinned == PinSpec::Edges ? "edges" : "none")
     << "\n";
  os << "  landmark_grid: [" << s.landmark_rows << ", " << s.landmark_cols << "]\n";
  static const char* kGraspNames[] = {"min_min", "min_max", "max_min", "max_max"};
  os << "  grasp_site: " << kGraspNames[static_cast<int>(s.grasp_site)] << "\n";
  os << "  sdf_margin_sigma: " << s.sdf_margin_sigma << "\n";
  os << "  initial_peel_blend_deg: " << s.initial_peel_blend_deg << "\n";
  os << "solver:\n";
  os << "  iterations: " << rc.solver.iterations << "\n";
  os << "  gravity: " << (rc.solver.gravity ? "true" : "false") << "\n";
  os << "loss:\n";
  os << "  gamma: " << rc.loss_gamma << "\n";
  os << "  alpha: " << rc.loss_alpha << "\n";
  os << "  beta: " << rc.loss_beta << "\n";
  os << "  smoothness_sign: " << (rc.smoothness_penalizes ? "penalty" : "reward") << "\n";
  os << "mpc:\n";
  os << "  num_seeds: " << rc.mpc_num_seeds << "\n";
  os << "  horizon: " << rc.mpc_horizon << "\n";
  os << "  gd_iterations: " << rc.mpc_gd_iterations << "\n";
  os << "  learning_rate: " << rc.mpc_learning_rate << "\n";
  os << "  sample_sigma: " << rc.mpc_sample_sigma << "\n";
  os << "  step_size: " << rc.mpc_step_size << "\n";
  os << "  fd_delta: " << rc.mpc_fd_delta << "\n";
  os << "run:\n";
  os << "  max_steps: " << rc.max_steps << "\n";
  return os.str();
}

uint64_t config_digest(const RunConfig& rc) {
  const std::string text = resolved_config_text(rc);
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace peelsim
