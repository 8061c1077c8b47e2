#pragma once

#include "symrigid/constructions.hpp"
#include "symrigid/gain_graph.hpp"
#include "symrigid/symmetry_groups.hpp"

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

namespace fixtures {

using symrigid::GainGraph;
using symrigid::MultiGraph;
using symrigid::SymmetryGroup;

// 1-based edge lists, as drawn
inline MultiGraph graph(int n, std::initializer_list<std::pair<int, int>> edges) {
  MultiGraph g(n);
  for (auto [a, b] : edges) g.add_edge(a - 1, b - 1);
  return g;
}

// quarter-turn graphs in the plane
inline MultiGraph quarter_five(int which) {
  switch (which) {
    case 1: return graph(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}});
    case 2: return graph(5, {{1, 2}, {1, 2}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {3, 4}, {3, 5}, {4, 5}});
    case 3: return graph(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {3, 5}, {4, 5}, {1, 1}});
    default: return graph(5, {{1, 2}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {1, 1}});
  }
}

inline MultiGraph quarter_six(int which) {
  switch (which) {
    case 1: return graph(6, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {4, 2}, {4, 3}, {4, 5}, {4, 6}, {2, 3}, {5, 6}});
    case 2: return graph(6, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 6}, {5, 6}});
    case 3: return graph(6, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}});
    default: return graph(6, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 6}, {3, 5}, {3, 6}, {4, 5}, {4, 6}});
  }
}

// half-turn graphs in space
inline MultiGraph half_turn_three(int which) {
  switch (which) {
    case 1: return graph(3, {{1, 2}, {1, 2}, {1, 3}, {1, 3}, {2, 3}, {2, 3}, {1, 1}, {2, 2}, {3, 3}});
    case 2: return graph(3, {{1, 2}, {1, 2}, {1, 2}, {1, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 2}});
    default: return graph(3, {{1, 2}, {1, 2}, {1, 2}, {1, 3}, {1, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 2}});
  }
}

inline MultiGraph half_turn_four(int which) {
  switch (which) {
    case 1:
      return graph(4, {{1, 2}, {1, 2}, {1, 3}, {1, 3}, {1, 4}, {2, 3}, {2, 3}, {2, 4}, {2, 4}, {3, 4}, {2, 2}, {3, 3}});
    case 2:
      return graph(4, {{1, 2}, {1, 2}, {1, 4}, {1, 4}, {2, 3}, {2, 3}, {3, 4}, {3, 4}, {2, 2}, {3, 3}, {3, 3}, {4, 4}});
    case 3:  // drawn with a 2-4 triple, which leaves 11 edges; a quadruple keeps the count and restores tightness
      return graph(4, {{1, 2}, {1, 2}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {2, 4}, {2, 4}, {2, 4}, {3, 3}, {3, 3}, {3, 3}});
    default:
      return graph(4, {{1, 2}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 3}, {2, 3}, {2, 4}, {3, 4}, {2, 2}, {2, 2}, {3, 3}});
  }
}

// 1-extension pair whose rigid fraction drops
inline MultiGraph drop_before() { return graph(4, {{1, 2}, {1, 3}, {2, 3}, {2, 3}, {2, 4}, {2, 4}, {2, 4}}); }
inline MultiGraph drop_after() {
  return graph(5, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {2, 4}, {2, 4}, {1, 5}, {2, 5}, {3, 5}});
}
inline MultiGraph rise_after() {
  return graph(6, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {1, 6}, {5, 6}, {3, 6}});
}

// rotation-group covering example: a=0, b=1, c=2
inline GainGraph covering_example(bool drop_bc = false) {
  auto c4 = SymmetryGroup::cyclic(4);
  GainGraph gg(MultiGraph(3), c4, {});
  auto r = [&](int k) { return c4.element({k}); };
  gg.add_edge(0, 1, r(0));
  gg.add_edge(0, 1, r(1));
  if (!drop_bc) gg.add_edge(1, 2, r(2));
  gg.add_edge(2, 2, r(1));
  gg.add_edge(2, 0, r(3));
  return gg;
}

// Brute-force count condition, kept independent of the library checkers.
inline bool subset_sparse(const MultiGraph& g, int k, int l) {
  const int n = g.vertex_count();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (k * size - l < 0) continue;
    int inside = 0;
    for (const auto& e : g.edges())
      if ((mask >> e.tail & 1) && (mask >> e.head & 1)) ++inside;
    if (inside > k * size - l) return false;
  }
  return true;
}

inline int bundle(const MultiGraph& g, int a, int b) {
  int c = 0;
  for (const auto& e : g.edges())
    if ((e.tail == a && e.head == b) || (e.tail == b && e.head == a)) ++c;
  return c;
}

// Greedy random tight graph: the sparse edge sets form a matroid, so greedy always reaches k|V| - l.
template <class Rng>
MultiGraph random_tight(int n, int k, int l, Rng& rng, int max_bundle = 1 << 20) {
  MultiGraph g(n);
  std::vector<std::pair<int, int>> pool;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) pool.push_back({a, b});
  while (g.edge_count() < k * n - l) {
    std::shuffle(pool.begin(), pool.end(), rng);
    bool grew = false;
    for (auto [a, b] : pool) {
      if (bundle(g, a, b) >= max_bundle) continue;
      MultiGraph h = g;
      h.add_edge(a, b);
      if (!subset_sparse(h, k, l)) continue;
      // random orientation
      if (a != b && rng() % 2) std::swap(a, b);
      g.add_edge(a, b);
      grew = true;
      break;
    }
    if (!grew) break;
  }
  return g;
}

template <class Rng>
MultiGraph random_multigraph(int n, int m, Rng& rng, bool loops = true) {
  MultiGraph g(n);
  if (n < 2 && !loops) m = 0;
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (g.edge_count() < m) {
    int a = pick(rng), b = pick(rng);
    if (a == b && !loops) continue;
    g.add_edge(a, b);
  }
  return g;
}

inline std::vector<SymmetryGroup> small_finite_groups() {
  return {SymmetryGroup::cyclic(2),          SymmetryGroup::cyclic(3),      SymmetryGroup::cyclic(4),
          SymmetryGroup::cyclic(5),          SymmetryGroup::cyclic(6),      SymmetryGroup::cyclic(8),
          SymmetryGroup::reflection(),       SymmetryGroup::dihedral(2),    SymmetryGroup::dihedral(3),
          SymmetryGroup::dihedral(4),        SymmetryGroup::klein3d(),      SymmetryGroup::inversion(2),
          SymmetryGroup::inversion(3),       SymmetryGroup::signed_permutation(2)};
}

}  // namespace fixtures
