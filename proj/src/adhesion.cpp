#include "peelsim/adhesion.hpp"

#include <algorithm>

namespace peelsim {

AdhesionBook make_adhesion_book(const Scene& scene) {
  AdhesionBook book;
  book.pairs = scene.graph.adhesion_pairs;
  book.alive.assign(book.pairs.size(), 1);
  book.grasp_seed_dressing = scene.grasp_particle;

  book.constraint_index.assign(book.pairs.size(), -1);
  size_t next = 0;
  const auto& items = scene.constraints.items;
  for (size_t ci = 0; ci < items.size() && next < book.pairs.size(); ++ci) {
    if (items[ci].kind != ConstraintKind::Adhesion) continue;
    book.constraint_index[next++] = static_cast<int>(ci);
  }
  for (size_t p = 0; p < book.pairs.size(); ++p) {
    if (book.alive[p] && items[book.constraint_index[p]].stiffness <= 0.0) {
      book.alive[p] = 0;
      book.detached.push_back(static_cast<int>(p));
    }
  }
  return book;
}

std::vector<FractureEvent> update_adhesion(const std::vector<Vec3>& positions,
                                           ConstraintSet& constraints, AdhesionBook& book,
                                           int step_index) {
  std::vector<FractureEvent> events;
  for (size_t p = 0; p < book.pairs.size(); ++p) {
    if (!book.alive[p]) continue;
    Constraint& c = constraints.items[book.constraint_index[p]];
    const double e = constraint_energy(positions, c);
    if (e < c.fracture_threshold) continue;
    c.set_stiffness(0.0);
    book.alive[p] = 0;
    book.detached.push_back(static_cast<int>(p));
    events.push_back({step_index, book.pairs[p].first, book.pairs[p].second, e});
  }
  std::sort(book.detached.begin(), book.detached.end());
  return events;
}

std::vector<int> check_removal(const ConstraintSet& constraints, const AdhesionBook& book) {
  std::vector<int> out;
  for (size_t p = 0; p < book.pairs.size(); ++p) {
    if (constraints.items[book.constraint_index[p]].stiffness == 0.0) out.push_back(static_cast<int>(p));
  }
  return out;
}

std::vector<int> adhesion_boundary(const std::vector<int>& seed_pairs,
                                   const ConnectivityGraph& graph, const AdhesionBook& book) {
  const int n = graph.dressing_count;
  std::vector<char> in_seed(n, 0);
  if (seed_pairs.empty()) {
    if (book.grasp_seed_dressing >= 0) in_seed[graph.dressing_local(book.grasp_seed_dressing)] = 1;
  } else {
    for (int p : seed_pairs) in_seed[graph.dressing_local(book.pairs[p].first)] = 1;
  }

  std::vector<char> added(n, 0);
  for (int local = 0; local < n; ++local) {
    if (!in_seed[local]) continue;
    for (int nb : graph.dressing_adjacency[local]) {
      if (!in_seed[nb]) added[nb] = 1;
    }
  }

  std::vector<int> out;
  for (size_t p = 0; p < book.pairs.size(); ++p) {
    if (book.alive[p] && added[graph.dressing_local(book.pairs[p].first)]) out.push_back(static_cast<int>(p));
  }
  return out;
}

void boundary_layers(AdhesionBook& book, const ConnectivityGraph& graph) {
  book.layer1 = adhesion_boundary(book.detached, graph, book);
  std::vector<int> seed = book.detached;
  seed.insert(seed.end(), book.layer1.begin(), book.layer1.end());
  book.layer2 = adhesion_boundary(seed, graph, book);
}

void fracture_pair(int pair_id, ConstraintSet& constraints, AdhesionBook& book) {
  if (!book.alive[pair_id]) return;
  constraints.items[book.constraint_index[pair_id]].set_stiffness(0.0);
  book.alive[pair_id] = 0;
  book.detached.push_back(pair_id);
  std::sort(book.detached.begin(), book.detached.end());
}

}  // namespace peelsim
