#pragma once

#include "symrigid/gain_graph.hpp"
#include "symrigid/rigidity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symrigid {

enum class ExtensionKind { zero, one, loop_one, two, loop_two, loop_zero };

const char* to_string(ExtensionKind kind);
std::optional<ExtensionKind> extension_kind_from_string(const std::string& s);

// The new vertex is appended (id = old vertex count). Removed edges are deleted first, then the
// new edges are appended in this order:
//   zero:      v0-v1, v0-v2                       attach {v1, v2}
//   loop_one:  v0-v1, loop at v0                  attach {v1}
//   one:       v0-v1, v0-v2, v0-v3                attach {v1, v2, v3}, removed {v1v2}
//   loop_two:  v0-v1, v0-v2, loop at v0           attach {v1, v2}, removed {v1v2}
//   two:       v0-v1, v0-v2, v0-v3, v0-v4         attach {v1..v4}, removed {v1v2, v3v4}
//   loop_zero: two loops at an isolated v0        attach {}
// New non-loop edges are oriented v0 -> vi; gains are read in that direction.
struct ExtensionStep {
  ExtensionKind kind = ExtensionKind::zero;
  std::vector<int> attach;
  std::vector<EdgeId> removed;
  std::vector<GroupElement> gains;  // empty for untyped steps
};

int new_edge_count(ExtensionKind kind);
MultiGraph apply_extension(const MultiGraph& g, const ExtensionStep& step);
GainGraph apply_gained_extension(const GainGraph& gg, const ExtensionStep& step);

struct GainChoice {
  std::vector<GroupElement> gains;
  int case_index = 0;  // 2-extensions: which endpoint-coincidence pattern applied (1..5)
};

GainChoice choose_gains_0ext(const GainGraph& gg, const ExtensionStep& step);
GainChoice choose_gains_1ext(const GainGraph& gg, const ExtensionStep& step);
GainChoice choose_gains_loop1ext(const GainGraph& gg, const ExtensionStep& step);
GainChoice choose_gains_2ext(const GainGraph& gg, const ExtensionStep& step);
GainChoice choose_gains_loop2ext(const GainGraph& gg, const ExtensionStep& step);
GainChoice choose_gains_loop0ext(const GainGraph& gg, const ExtensionStep& step);
GainChoice choose_gains(const GainGraph& gg, const ExtensionStep& step);

// 1..5 for a 2-extension attachment; see the gain choice for the meaning.
int two_extension_case(const std::vector<int>& attach);

struct EdgeImage {
  EdgeId edge = -1;
  bool reversed = false;
};

struct ConstructionSequence {
  int base_loops = 1;  // 1: one vertex with a loop; 2: one vertex with two loops
  std::vector<ExtensionStep> steps;
  std::vector<int> vertex_map;       // replay vertex -> target vertex
  std::vector<EdgeImage> edge_map;   // replay edge -> target edge
};

MultiGraph base_graph(int loops);
// Replays the steps; returns every intermediate graph (base first).
std::vector<MultiGraph> replay(const ConstructionSequence& seq);
// Replays and maps the final graph back onto the target labels.
bool sequence_reproduces(const ConstructionSequence& seq, const MultiGraph& target);

ConstructionSequence reduction_sequence_21(const MultiGraph& g, bool forbid_triples = false);
ConstructionSequence reduction_sequence_20(const MultiGraph& g, bool forbid_quadruples = false);

// Gain assignments.
GainGraph assign_rigid_gains_2d(const MultiGraph& g, const SymmetryGroup& group, std::uint64_t seed = 1);
GainGraph assign_gains_periodic(const MultiGraph& g, const SymmetryGroup& translations);
GainGraph assign_gains_trans_point(const MultiGraph& g, const SymmetryGroup& trans_point);
GainGraph assign_gains_trans_inversion(const MultiGraph& g, const SymmetryGroup& trans_inv);

struct DenseAssignment {
  GainGraph gains;
  Placement placement;
  double theta = 0;
  double delta = 0;
  int rank = 0;
  int halvings = 0;
};
DenseAssignment assign_gains_dense(const MultiGraph& g, int d, double theta = 1e-2, double delta = 1e-3);

Placement zero_placement(const GainGraph& gg);

// Generators.
GainGraph build_gammah(const SymmetryGroup& group);
// Flexible companion of build_gammah: the same graph with every gain trivial.
GainGraph with_identity_gains(const MultiGraph& g, const SymmetryGroup& group);
GainGraph join_k_edges(const GainGraph& a, const GainGraph& b, int k);
MultiGraph join_k_edges(const MultiGraph& a, const MultiGraph& b, int k);
MultiGraph build_bigprob(const MultiGraph& base, int copies, int d);

struct QEpsilon {
  MultiGraph graph;
  int copies = 0;
  double predicted = 0;  // base_probability ^ copies
};
// Chains `copies` copies of `base` with k independent edges between consecutive copies.
QEpsilon build_qepsilon(const MultiGraph& base, double base_probability, int k, double q, double eps);

}  // namespace symrigid
