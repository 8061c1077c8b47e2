#include "symrigid/constructions.hpp"

#include "symrigid/errors.hpp"

#include <cmath>
#include <limits>

namespace symrigid {

GainGraph build_gammah(const SymmetryGroup& group) {
  if (!group.is_finite()) throw Error(ErrorCode::unsupported_enumeration, "needs a finite group");
  const int d = group.dimension();
  const auto elements = group.enumerate();
  const int order = static_cast<int>(elements.size());
  const int hubs = d + 1;
  auto fiber = [&](int i, int g) { return hubs + i * order + g; };
  GainGraph gg(MultiGraph(hubs + hubs * order), group, {});
  const GroupElement one = group.identity();
  for (int i = 0; i < hubs; ++i)
    for (int j = i + 1; j < hubs; ++j) gg.add_edge(i, j, one);
  for (int i = 0; i < hubs; ++i)
    for (int j = 0; j < hubs; ++j) {
      if (i == j) continue;
      for (int g = 0; g < order; ++g) gg.add_edge(i, fiber(j, g), one);
    }
  // Element 0 is the identity; fiber(i, 0) plays the role of the identity copy of v_i.
  for (int i = 0; i < hubs; ++i)
    for (int j = 0; j < hubs; ++j) {
      if (i == j) continue;
      for (int g = 0; g < order; ++g) {
        if (g == 0 && j < i) continue;
        gg.add_edge(fiber(i, 0), fiber(j, g), elements[g]);
      }
    }
  return gg;
}

GainGraph with_identity_gains(const MultiGraph& g, const SymmetryGroup& group) {
  return GainGraph(g, group, std::vector<GroupElement>(g.edge_count(), group.identity()));
}

MultiGraph join_k_edges(const MultiGraph& a, const MultiGraph& b, int k) {
  if (k < 0 || k > a.vertex_count() || k > b.vertex_count())
    throw Error(ErrorCode::invalid_argument, "both graphs need at least k vertices");
  const int off = a.vertex_count();
  MultiGraph out(off + b.vertex_count());
  for (const auto& e : a.edges()) out.add_edge(e.tail, e.head);
  for (const auto& e : b.edges()) out.add_edge(off + e.tail, off + e.head);
  for (int i = 0; i < k; ++i) out.add_edge(i, off + i);
  return out;
}

GainGraph join_k_edges(const GainGraph& a, const GainGraph& b, int k) {
  if (!(a.group == b.group)) throw Error(ErrorCode::mixed_groups, "joined gain graphs use different groups");
  const int need = std::max(a.dimension() + 1, k);
  if (a.graph.vertex_count() < need || b.graph.vertex_count() < need)
    throw Error(ErrorCode::invalid_argument, "both graphs need at least max(d+1, k) vertices");
  std::vector<GroupElement> gains = a.gains;
  gains.insert(gains.end(), b.gains.begin(), b.gains.end());
  gains.insert(gains.end(), static_cast<std::size_t>(k), a.group.identity());
  return GainGraph(join_k_edges(a.graph, b.graph, k), a.group, std::move(gains));
}

MultiGraph build_bigprob(const MultiGraph& base, int copies, int d) {
  if (copies < 1 || d < 1) throw Error(ErrorCode::invalid_argument, "copies and d must be positive");
  if (base.vertex_count() <= d) throw Error(ErrorCode::invalid_argument, "base graph needs more than d vertices");
  const int nb = base.vertex_count();
  MultiGraph out(d + copies * nb);
  for (int c = 0; c < copies; ++c) {
    const int off = d + c * nb;
    for (const auto& e : base.edges()) out.add_edge(off + e.tail, off + e.head);
    for (int w = 0; w < d; ++w)
      for (int v = 0; v < nb; ++v) out.add_edge(w, off + v);
  }
  return out;
}

QEpsilon build_qepsilon(const MultiGraph& base, double base_probability, int k, double q, double eps) {
  if (!(q > 0 && q < 1) || !(eps > 0)) throw Error(ErrorCode::invalid_argument, "need 0 < q < 1 and eps > 0");
  if (!(base_probability > 0 && base_probability < 1))
    throw Error(ErrorCode::invalid_argument, "base probability must lie strictly between 0 and 1");
  int best = 1;
  double best_gap = std::numeric_limits<double>::infinity();
  double power = 1;
  for (int m = 1; m <= 100000; ++m) {
    power *= base_probability;
    double gap = std::abs(power - q);
    if (gap < best_gap) {
      best_gap = gap;
      best = m;
    }
    if (power < q) break;
  }
  if (best_gap >= eps) throw Error(ErrorCode::invalid_argument, "base probability too coarse for this tolerance");
  MultiGraph g = base;
  for (int m = 1; m < best; ++m) {
    MultiGraph joined = join_k_edges(g, base, 0);
    // Link the new copy to the previous one with k independent edges.
    const int prev = g.vertex_count() - base.vertex_count(), next = g.vertex_count();
    for (int i = 0; i < k; ++i) joined.add_edge(prev + i, next + i);
    g = std::move(joined);
  }
  return {std::move(g), best, std::pow(base_probability, best)};
}

}  // namespace symrigid
