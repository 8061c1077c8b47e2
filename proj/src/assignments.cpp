#include "symrigid/constructions.hpp"

#include "symrigid/errors.hpp"
#include "symrigid/sparsity.hpp"

#include <algorithm>

namespace symrigid {

namespace detail {
std::pair<GroupElement, GroupElement> base_dihedral_pair(const SymmetryGroup& group);
GroupElement base_loop_gain(const SymmetryGroup& group);
}  // namespace detail

Placement zero_placement(const GainGraph& gg) { return Placement::Zero(gg.graph.vertex_count(), gg.dimension()); }

namespace {

GainGraph pull_back(const ConstructionSequence& seq, const GainGraph& built, const MultiGraph& target) {
  std::vector<GroupElement> gains(target.edge_count());
  for (EdgeId e = 0; e < built.graph.edge_count(); ++e) {
    auto img = seq.edge_map[e];
    gains[img.edge] = img.reversed ? built.group.inverse(built.gains[e]) : built.gains[e];
  }
  return GainGraph(target, built.group, std::move(gains));
}

int rank_at_zero(const GainGraph& gg) { return numerical_rank(orbit_rigidity_matrix(gg, zero_placement(gg))); }

ElementCode unit_code(int r, int i) {
  ElementCode c(r, 0);
  c[i] = 1;
  return c;
}

GroupElement lattice_element(const SymmetryGroup& group, int i, const GroupElement& point) {
  const int r = static_cast<int>(group.basis().rows());
  ElementCode c = unit_code(r, i);
  c.insert(c.end(), point.code().begin(), point.code().end());
  return group.element(c);
}

void require_full_lattice(const SymmetryGroup& group) {
  if (group.basis().rows() != group.dimension() || numerical_rank(group.basis()) != group.dimension())
    throw Error(ErrorCode::invalid_argument, "translation lattice must have d independent generators");
}

}  // namespace

GainGraph assign_rigid_gains_2d(const MultiGraph& g, const SymmetryGroup& group, std::uint64_t seed) {
  if (group.dimension() != 2) throw Error(ErrorCode::invalid_argument, "planar assignment needs a group in dimension 2");
  const int k = trivial_flex_dimension(group);
  const bool finite = group.is_finite();
  const std::size_t order = finite ? group.order() : 0;
  ConstructionSequence seq;
  GainGraph built;
  if (k == 1) {
    if (finite && order < 2) throw Error(ErrorCode::invalid_argument, "group must be non-trivial");
    if (!is_tight(g, 2, 1)) throw Error(ErrorCode::not_tight, "graph is not (2,1)-tight");
    const bool small = finite && order == 2;
    if (small && g.max_bundle() > 2)
      throw Error(ErrorCode::no_valid_gains, "a triple of parallel edges admits no gain map for a group of order 2");
    seq = reduction_sequence_21(g, small);
    built = GainGraph(base_graph(1), group, {detail::base_loop_gain(group)});
  } else if (k == 0) {
    if (!is_tight(g, 2, 0)) throw Error(ErrorCode::not_tight, "graph is not (2,0)-tight");
    const bool small = finite && order == 4;
    if (finite && order < 4) throw Error(ErrorCode::no_valid_gains, "group too small");
    if (small && g.max_bundle() > 3)
      throw Error(ErrorCode::no_valid_gains, "a quadruple of parallel edges admits no rigid gain map for a group of order 4");
    seq = reduction_sequence_20(g, small);
    auto [s, r] = detail::base_dihedral_pair(group);
    built = GainGraph(base_graph(2), group, {s, r});
  } else {
    throw Error(ErrorCode::invalid_argument, "planar assignment needs a group with at most one trivial motion");
  }
  for (auto step : seq.steps) {
    step.gains = choose_gains(built, step).gains;
    built = apply_gained_extension(built, step);
  }
  GainGraph out = pull_back(seq, built, g);
  require_valid(out);
  if (!rigidity_consensus(out, 3, seed, 1).rigid)
    throw Error(ErrorCode::rank_deficient, "constructed gain graph failed the rigidity check");
  return out;
}

GainGraph assign_gains_periodic(const MultiGraph& g, const SymmetryGroup& group) {
  if (group.kind() != GroupKind::translations) throw Error(ErrorCode::invalid_argument, "periodic assignment needs a translation group");
  require_full_lattice(group);
  const int d = group.dimension();
  if (!is_tight(g, d, d)) throw Error(ErrorCode::not_tight, "graph is not (d,d)-tight");
  Decomposition dec = nash_williams_trees(g, d);
  std::vector<GroupElement> gains;
  for (EdgeId e = 0; e < g.edge_count(); ++e) gains.push_back(group.element(unit_code(d, dec.color[e])));
  GainGraph out(g, group, std::move(gains));
  require_valid(out);
  if (rank_at_zero(out) != d * g.vertex_count() - d)
    throw Error(ErrorCode::rank_deficient, "periodic assignment lost rank");
  return out;
}

GainGraph assign_gains_trans_inversion(const MultiGraph& g, const SymmetryGroup& group) {
  if (group.kind() != GroupKind::trans_inv) throw Error(ErrorCode::invalid_argument, "needs a translations-with-inversion group");
  require_full_lattice(group);
  const int d = group.dimension();
  if (!is_tight(g, d, 0)) throw Error(ErrorCode::not_tight, "graph is not (d,0)-tight");
  const auto& point = group.point_group();
  GroupElement minus = point.identity();
  for (const auto& x : point.enumerate())
    if (!point.is_identity(x)) minus = x;
  Decomposition dec = map_decomposition(g, d);
  std::vector<GroupElement> gains;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    gains.push_back(lattice_element(group, dec.color[e], dec.cycle_edge[e] ? minus : point.identity()));
  GainGraph out(g, group, std::move(gains));
  require_valid(out);
  if (rank_at_zero(out) != d * g.vertex_count()) throw Error(ErrorCode::rank_deficient, "inversion assignment lost rank");
  return out;
}

GainGraph assign_gains_trans_point(const MultiGraph& g, const SymmetryGroup& group) {
  if (group.kind() != GroupKind::trans_point && group.kind() != GroupKind::trans_inv)
    throw Error(ErrorCode::invalid_argument, "needs a translations-with-point-group group");
  require_full_lattice(group);
  const int d = group.dimension();
  if (!is_tight(g, d, 0)) throw Error(ErrorCode::not_tight, "graph is not (d,0)-tight");
  const auto& point = group.point_group();
  auto points = point.enumerate();

  Eigen::MatrixXd stack(static_cast<Eigen::Index>(d) * points.size(), d);
  for (std::size_t i = 0; i < points.size(); ++i)
    stack.block(static_cast<Eigen::Index>(d * i), 0, d, d) = Eigen::MatrixXd::Identity(d, d) - point.linear_part(points[i]);
  if (numerical_rank(stack) != d) throw Error(ErrorCode::invalid_argument, "point group fixes a non-zero vector");

  auto sub = find_spanning_tight_subgraph(g, d, d);
  if (!sub) throw Error(ErrorCode::decomposition_impossible, "no spanning (d,d)-tight subgraph");
  Decomposition dec = nash_williams_trees(edge_subgraph(g, *sub), d);
  std::vector<GroupElement> gains(g.edge_count());
  std::vector<bool> in_sub(g.edge_count(), false);
  for (std::size_t i = 0; i < sub->size(); ++i) {
    in_sub[(*sub)[i]] = true;
    gains[(*sub)[i]] = lattice_element(group, dec.color[i], point.identity());
  }
  std::vector<EdgeId> rest;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!in_sub[e]) rest.push_back(e);

  const Eigen::MatrixXd& basis = group.basis();
  const std::size_t np = points.size();
  std::size_t combos = 1;
  for (int i = 0; i < d; ++i) combos *= static_cast<std::size_t>(d) * np;
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t code = c;
    std::vector<std::pair<int, std::size_t>> pick;
    for (int i = 0; i < d; ++i) {
      std::size_t digit = code % (static_cast<std::size_t>(d) * np);
      code /= static_cast<std::size_t>(d) * np;
      pick.push_back({static_cast<int>(digit / np), digit % np});
    }
    Eigen::MatrixXd vecs(d, d);
    for (int i = 0; i < d; ++i) {
      Eigen::MatrixXd inv = point.linear_part(point.inverse(points[pick[i].second]));
      vecs.row(i) = ((Eigen::MatrixXd::Identity(d, d) - inv) * basis.row(pick[i].first).transpose()).transpose();
    }
    if (numerical_rank(vecs) != d) continue;
    for (int i = 0; i < d; ++i) gains[rest[i]] = lattice_element(group, pick[i].first, points[pick[i].second]);
    GainGraph out(g, group, gains);
    if (!validate(out).empty()) continue;
    if (rank_at_zero(out) == d * g.vertex_count()) return out;
  }
  throw Error(ErrorCode::no_valid_gains, "no translation and point-group choice reaches full rank");
}

DenseAssignment assign_gains_dense(const MultiGraph& g, int d, double theta, double delta) {
  if (d < 2) throw Error(ErrorCode::invalid_argument, "dense assignment needs d >= 2");
  if (!(theta > 0) || !(delta > 0)) throw Error(ErrorCode::invalid_argument, "theta and delta must be positive");
  if (!is_tight(g, d, 0)) throw Error(ErrorCode::not_tight, "graph is not (d,0)-tight");
  Decomposition dec = map_decomposition(g, d);
  const int n = g.vertex_count();
  for (int halvings = 0; halvings <= 8; ++halvings) {
    SymmetryGroup group = dense_surrogate(d, std::vector<double>(d - 1, theta));
    GroupElement sigma = group.from_isometry(last_axis_reflection(d));
    std::vector<GroupElement> gains;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const int c = dec.color[e];
      GroupElement x = c == d - 1 ? (dec.cycle_edge[e] ? sigma : group.identity())
                                  : (dec.cycle_edge[e] ? approx_reflection(group, c + 1, theta) : approx_rotation(group, c + 1, theta));
      const auto& edge = g.edge(e);
      gains.push_back(edge.tail <= edge.head ? x : group.inverse(x));
    }
    GainGraph gg(g, group, std::move(gains));
    Placement p = Placement::Zero(n, d);
    for (int v = 0; v < n; ++v) p(v, d - 1) = 1.0 + delta * (v + 1);
    int rank = numerical_rank(orbit_rigidity_matrix(gg, p));
    if (validate(gg).empty() && rank == d * n) return {std::move(gg), std::move(p), theta, delta, rank, halvings};
    theta /= 2;
    delta /= 2;
  }
  throw Error(ErrorCode::rank_deficient, "dense assignment did not reach full rank");
}

}  // namespace symrigid
