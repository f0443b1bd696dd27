#pragma once

#include <vector>

#include "peelsim/core.hpp"
#include "peelsim/scene.hpp"

namespace peelsim {

struct FractureEvent {
  int step = 0;
  int dressing_index = 0;
  int skin_index = 0;
  double energy = 0.0;
};

// Bookkeeping for the adhesion pair list: which pairs have fractured and the
// two boundary layers around the detached region. Pair ids index into
// ConnectivityGraph::adhesion_pairs.
struct AdhesionBook {
  std::vector<std::pair<int, int>> pairs;  // (dressing idx, skin idx), global
  std::vector<int> constraint_index;       // pair id -> constraint index
  std::vector<char> alive;
  std::vector<int> detached;  // pair ids, sorted
  std::vector<int> layer1;    // V1, pair ids, sorted
  std::vector<int> layer2;    // V2, pair ids, sorted
  int grasp_seed_dressing = -1;  // global dressing index seeding D(empty)

  bool all_detached() const { return detached.size() == pairs.size(); }
};

AdhesionBook make_adhesion_book(const Scene& scene);

// Fractures every alive adhesion constraint whose energy on `positions`
// reaches its threshold: stiffness zeroed, pair recorded as detached.
std::vector<FractureEvent> update_adhesion(const std::vector<Vec3>& positions,
                                           ConstraintSet& constraints, AdhesionBook& book,
                                           int step_index);

// Pair ids whose constraint stiffness is zero (recomputed from constraints).
std::vector<int> check_removal(const ConstraintSet& constraints, const AdhesionBook& book);

// One-edge expansion of the seed pairs' dressing particles over the axis
// adjacency; returns the alive pairs gained by the expansion. An empty seed
// falls back to the grasp-corner dressing particle.
std::vector<int> adhesion_boundary(const std::vector<int>& seed_pairs,
                                   const ConnectivityGraph& graph, const AdhesionBook& book);

// Recomputes V1 = D(Vdet) and V2 = D(Vdet u V1) into the book.
void boundary_layers(AdhesionBook& book, const ConnectivityGraph& graph);

// Manually fractures one pair (grasp bootstrap).
void fracture_pair(int pair_id, ConstraintSet& constraints, AdhesionBook& book);

}  // namespace peelsim
