#pragma once

#include "symrigid/gain_graph.hpp"

#include <optional>
#include <vector>

namespace symrigid {

// (k, l) count condition on every vertex set X with k|X| - l >= 0.
bool is_sparse(const MultiGraph& g, int k, int l);
bool is_tight(const MultiGraph& g, int k, int l);
bool is_sparse_exhaustive(const MultiGraph& g, int k, int l);
// Requires 0 <= l < 2k; loops are only handled by the game when l <= k.
bool is_sparse_pebble(const MultiGraph& g, int k, int l);

class PebbleGame {
 public:
  PebbleGame(int n, int k, int l);
  // Accepts the edge iff the accepted set stays (k, l)-sparse.
  bool try_add(int u, int v);
  int accepted() const { return accepted_; }

 private:
  bool gather(int u, int v);
  bool fetch(int target, int blocked);

  int n_, k_, l_;
  int accepted_ = 0;
  std::vector<int> pebbles_;
  std::vector<std::vector<int>> out_;  // covered edges as out-neighbour lists
};

// All X satisfy i(X) <= k|X| - m; edge sets that are balanced satisfy |F| <= k|V(F)| - l.
bool is_gain_sparse(const GainGraph& gg, int k, int l, int m);
bool is_gain_tight(const GainGraph& gg, int k, int l, int m);

struct Decomposition {
  int classes = 0;
  std::vector<int> color;            // class index 0..classes-1 per edge
  std::vector<int> out_vertex;       // map decompositions: the vertex each edge is oriented away from
  std::vector<bool> cycle_edge;      // map decompositions: one designated cycle edge per class component
};

Decomposition nash_williams_trees(const MultiGraph& g, int d);
Decomposition map_decomposition(const MultiGraph& g, int d);
MultiGraph class_subgraph(const MultiGraph& g, const Decomposition& dec, int c, std::vector<EdgeId>* ids = nullptr);

std::optional<std::vector<EdgeId>> find_spanning_tight_subgraph(const MultiGraph& g, int k, int l);
std::optional<std::vector<EdgeId>> find_spanning_gain_tight_subgraph(const GainGraph& gg, int k, int l, int m);

// Every connected component has as many edges as vertices.
bool unique_cycle_check(const MultiGraph& g);
bool is_forest(const MultiGraph& g);

MultiGraph edge_subgraph(const MultiGraph& g, const std::vector<EdgeId>& edges);
GainGraph edge_subgraph(const GainGraph& gg, const std::vector<EdgeId>& edges);

}  // namespace symrigid
