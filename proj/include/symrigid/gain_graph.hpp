#pragma once

#include "symrigid/symmetry_groups.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace symrigid {

using BigInt = boost::multiprecision::cpp_int;
using EdgeId = int;

struct Edge {
  int tail = 0;
  int head = 0;
  bool is_loop() const { return tail == head; }
  int other(int v) const { return v == tail ? head : tail; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int n) : n_(n) {}
  MultiGraph(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  int add_vertex() { return n_++; }
  EdgeId add_edge(int tail, int head);
  // Removes the listed edges; the remaining edges keep their relative order and are renumbered densely.
  MultiGraph without_edges(const std::vector<EdgeId>& removed) const;
  MultiGraph without_vertex(int v) const;  // drops incident edges, renumbers later vertices

  int degree(int v) const;  // loops count twice
  int loop_count(int v) const;
  std::vector<EdgeId> incident(int v) const;
  std::vector<EdgeId> between(int u, int v) const;
  // Largest number of parallel non-loop edges joining one vertex pair.
  int max_bundle() const;
  int induced_edge_count(std::uint64_t mask) const;
  std::vector<std::vector<int>> components() const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Multiset equality up to vertex relabeling (brute force, small graphs only).
bool isomorphic(const MultiGraph& a, const MultiGraph& b);

struct GainGraph {
  MultiGraph graph;
  SymmetryGroup group;
  std::vector<GroupElement> gains;  // designated tail -> head orientation

  GainGraph() = default;
  GainGraph(MultiGraph g, SymmetryGroup grp, std::vector<GroupElement> gs)
      : graph(std::move(g)), group(std::move(grp)), gains(std::move(gs)) {}

  // Gain of edge e read from `from` towards the other endpoint.
  GroupElement gain(EdgeId e, int from) const;
  int dimension() const { return group.dimension(); }
  EdgeId add_edge(int tail, int head, const GroupElement& g);
};

struct Violation {
  int condition;  // 0 = malformed, 2 = equal parallel gains, 3 = identity loop
  std::vector<EdgeId> edges;
  std::string message;
};

std::vector<Violation> validate(const GainGraph& gg);
void require_valid(const GainGraph& gg);

// Relabels the fiber over v; edges leaving v get gain g*phi, loops at v are conjugated.
GainGraph switch_at(const GainGraph& gg, int v, const GroupElement& g);
// Switches so that a spanning forest carries identity gains; returns the switched graph.
GainGraph switch_to_forest(const GainGraph& gg);

bool is_balanced(const GainGraph& gg, const std::vector<int>& vertices);
bool is_balanced(const GainGraph& gg);
bool edges_balanced(const GainGraph& gg, const std::vector<EdgeId>& edges);

struct CoverVertex {
  int base;
  GroupElement element;
};

struct CoveringGraph {
  std::vector<CoverVertex> vertices;             // index = base * |G| + element index
  std::vector<std::pair<int, int>> edges;        // cover vertex indices
  std::vector<EdgeId> base_edge;                 // base edge of each cover edge
  std::vector<GroupElement> elements;            // enumeration order of the group
};

using Placement = Eigen::MatrixXd;  // one row per vertex

CoveringGraph covering_graph(const GainGraph& gg);
Placement lift_placement(const GainGraph& gg, const Placement& p);

// The constrained gain-map space of a multigraph: loops avoid the identity, parallel edges
// (and loops at one vertex) carry distinct gains in the orientation lower index -> higher index.
class GainMapSpace {
 public:
  GainMapSpace(MultiGraph graph, SymmetryGroup group);

  const MultiGraph& graph() const { return graph_; }
  const SymmetryGroup& group() const { return group_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const std::vector<int>& inverse_index() const { return inverse_; }
  const std::vector<int>& radix() const { return radix_; }

  BigInt count() const { return count_; }
  bool fits_u64() const { return count_ <= BigInt(UINT64_MAX); }
  std::uint64_t count_u64() const;

  // Element index per edge (designated orientation) of the index-th map in lexicographic order.
  void decode(std::uint64_t index, std::vector<int>& out) const;
  void digits_to_gains(const std::vector<int>& digits, std::vector<int>& out) const;
  template <class Rng>
  void sample(Rng& rng, std::vector<int>& out) const {
    std::vector<int> digits(radix_.size());
    for (std::size_t i = 0; i < radix_.size(); ++i)
      digits[i] = static_cast<int>(std::uniform_int_distribution<std::int64_t>(0, radix_[i] - 1)(rng));
    digits_to_gains(digits, out);
  }
  GainGraph gain_graph(const std::vector<int>& element_indices) const;
  GainGraph at(std::uint64_t index) const;

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = GainGraph;
    using difference_type = std::ptrdiff_t;
    iterator(const GainMapSpace* s, std::uint64_t i) : space_(s), index_(i) {}
    GainGraph operator*() const { return space_->at(index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    const GainMapSpace* space_;
    std::uint64_t index_;
  };
  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, count_u64()); }

 private:
  MultiGraph graph_;
  SymmetryGroup group_;
  std::vector<GroupElement> elements_;
  std::vector<int> inverse_;
  std::vector<int> radix_;
  std::vector<int> bundle_;      // bundle id per edge
  std::vector<int> position_;    // position within its bundle
  std::vector<bool> reversed_;   // designated orientation is higher -> lower
  std::vector<std::vector<EdgeId>> bundles_;
  BigInt count_;
};

BigInt count_gain_maps(const MultiGraph& graph, const SymmetryGroup& group);

}  // namespace symrigid
