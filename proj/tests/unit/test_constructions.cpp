#include <doctest.h>

#include "fixtures.hpp"
#include "symrigid/constructions.hpp"
#include "symrigid/errors.hpp"
#include "symrigid/sparsity.hpp"

using namespace symrigid;
using fixtures::graph;

namespace {

ExtensionStep step(ExtensionKind kind, std::vector<int> attach, std::vector<EdgeId> removed = {}) {
  ExtensionStep s;
  s.kind = kind;
  s.attach = std::move(attach);
  s.removed = std::move(removed);
  return s;
}

}  // namespace

TEST_CASE("extension names round trip") {
  for (auto k : {ExtensionKind::zero, ExtensionKind::one, ExtensionKind::loop_one, ExtensionKind::two,
                 ExtensionKind::loop_two, ExtensionKind::loop_zero})
    CHECK(extension_kind_from_string(to_string(k)) == k);
  CHECK_FALSE(extension_kind_from_string("3-ext").has_value());
}

TEST_CASE("untyped extensions keep tightness") {
  MultiGraph g = base_graph(1);
  g = apply_extension(g, step(ExtensionKind::zero, {0, 0}));
  CHECK(g.vertex_count() == 2);
  CHECK(is_tight(g, 2, 1));
  g = apply_extension(g, step(ExtensionKind::loop_one, {1}));
  CHECK(is_tight(g, 2, 1));
  EdgeId e01 = g.between(0, 1).front();
  g = apply_extension(g, step(ExtensionKind::one, {0, 1, 2}, {e01}));
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 7);
  CHECK(is_tight(g, 2, 1));

  MultiGraph h = base_graph(2);
  h = apply_extension(h, step(ExtensionKind::loop_zero, {}));
  CHECK(is_tight(h, 2, 0));
  h = apply_extension(h, step(ExtensionKind::zero, {0, 1}));
  EdgeId l0 = h.between(0, 0).front(), l1 = h.between(1, 1).front();
  h = apply_extension(h, step(ExtensionKind::two, {0, 0, 1, 1}, {l0, l1}));
  CHECK(is_tight(h, 2, 0));
  h = apply_extension(h, step(ExtensionKind::loop_two, {0, 2}, {h.between(0, 2).front()}));
  CHECK(is_tight(h, 2, 0));
}

TEST_CASE("2-extension cases") {
  CHECK(two_extension_case({0, 1, 2, 3}) == 1);
  CHECK(two_extension_case({0, 1, 1, 2}) == 2);
  CHECK(two_extension_case({0, 1, 0, 1}) == 3);
  CHECK(two_extension_case({0, 0, 0, 1}) == 4);
  CHECK(two_extension_case({0, 0, 0, 0}) == 5);
}

TEST_CASE("chosen gains satisfy the removed-edge constraint") {
  auto d4 = SymmetryGroup::dihedral(4);
  GainGraph gg(base_graph(2), d4, {});
  gg.gains = {d4.element({0, 1}), d4.element({1, 0})};
  ExtensionStep s = step(ExtensionKind::loop_zero, {});
  s.gains = choose_gains(gg, s).gains;
  gg = apply_gained_extension(gg, s);
  s = step(ExtensionKind::zero, {0, 1});
  s.gains = choose_gains(gg, s).gains;
  gg = apply_gained_extension(gg, s);
  CHECK(validate(gg).empty());
  EdgeId e = gg.graph.between(0, 2).front(), f = gg.graph.between(1, 2).front();
  s = step(ExtensionKind::two, {0, 2, 1, 2}, {e, f});
  GainChoice c = choose_gains(gg, s);
  CHECK(c.case_index == 2);
  s.gains = c.gains;
  GainGraph next = apply_gained_extension(gg, s);
  CHECK(validate(next).empty());
  CHECK(is_symmetrically_rigid(next).rank == 2 * next.graph.vertex_count());

  // a wrong gain is rejected
  s.gains[1] = d4.compose(s.gains[1], d4.element({1, 0}));
  CHECK_THROWS_AS(apply_gained_extension(gg, s), Error);
}

TEST_CASE("reduction of the five-vertex quarter-turn graph") {
  MultiGraph g = fixtures::quarter_five(1);
  ConstructionSequence seq = reduction_sequence_21(g);
  CHECK(seq.base_loops == 1);
  CHECK(seq.steps.size() == 4);
  CHECK(sequence_reproduces(seq, g));
  for (const auto& m : replay(seq)) CHECK(is_tight(m, 2, 1));
}

TEST_CASE("triple bundle reduces through a 1-extension") {
  MultiGraph g = graph(2, {{1, 2}, {1, 2}, {1, 2}});
  ConstructionSequence seq = reduction_sequence_21(g);
  REQUIRE(seq.steps.size() == 1);
  CHECK(seq.steps[0].kind == ExtensionKind::one);
  CHECK(sequence_reproduces(seq, g));
  CHECK_THROWS_AS(reduction_sequence_21(g, true), Error);
}

TEST_CASE("random tight graphs reduce and replay") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 6;
    MultiGraph a = fixtures::random_tight(n, 2, 1, rng);
    ConstructionSequence s1 = reduction_sequence_21(a);
    CHECK(sequence_reproduces(s1, a));
    MultiGraph b = fixtures::random_tight(n, 2, 0, rng, 3);
    ConstructionSequence s0 = reduction_sequence_20(b, true);
    CHECK(sequence_reproduces(s0, b));
    for (const auto& m : replay(s0)) CHECK(m.max_bundle() <= 3);
  }
  CHECK_THROWS_AS(reduction_sequence_21(graph(2, {{1, 2}})), Error);
}

TEST_CASE("planar assignments are rigid") {
  auto c4 = SymmetryGroup::cyclic(4);
  GainGraph gg = assign_rigid_gains_2d(fixtures::quarter_five(1), c4);
  CHECK(validate(gg).empty());
  CHECK(is_symmetrically_rigid(gg).rigid);

  GainGraph d = assign_rigid_gains_2d(graph(2, {{1, 2}, {1, 2}, {1, 2}, {1, 1}}), SymmetryGroup::dihedral(3));
  CHECK(is_symmetrically_rigid(d).rank == 4);
}

TEST_CASE("assignments refuse what cannot work") {
  auto d2 = SymmetryGroup::dihedral(2);
  MultiGraph quad = graph(2, {{1, 2}, {1, 2}, {1, 2}, {1, 2}});
  try {
    assign_rigid_gains_2d(quad, d2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_valid_gains);
  }
  try {
    assign_rigid_gains_2d(graph(2, {{1, 2}, {1, 2}, {1, 2}}), SymmetryGroup::cyclic(2));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_valid_gains);
  }
  try {
    assign_rigid_gains_2d(graph(2, {{1, 2}}), SymmetryGroup::cyclic(4));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_tight);
  }
}

TEST_CASE("lattice assignments") {
  auto t2 = SymmetryGroup::translations(Eigen::MatrixXd::Identity(2, 2));
  MultiGraph g = graph(3, {{1, 2}, {2, 3}, {1, 3}, {1, 2}});
  GainGraph gg = assign_gains_periodic(g, t2);
  CHECK(numerical_rank(orbit_rigidity_matrix(gg, zero_placement(gg))) == 4);

  auto ti = SymmetryGroup::trans_inv(Eigen::MatrixXd::Identity(2, 2));
  GainGraph inv = assign_gains_trans_inversion(graph(2, {{1, 2}, {1, 2}, {1, 1}, {2, 2}}), ti);
  CHECK(numerical_rank(orbit_rigidity_matrix(inv, zero_placement(inv))) == 4);

  auto tp = SymmetryGroup::trans_point(Eigen::MatrixXd::Identity(3, 3), SymmetryGroup::klein3d());
  GainGraph kp = assign_gains_trans_point(fixtures::half_turn_three(1), tp);
  CHECK(numerical_rank(orbit_rigidity_matrix(kp, zero_placement(kp))) == 9);
}

TEST_CASE("dense surrogate assignment") {
  DenseAssignment a = assign_gains_dense(fixtures::half_turn_three(1), 3, 1e-2, 1e-2);
  CHECK(a.rank == 9);
  CHECK(numerical_rank(orbit_rigidity_matrix(a.gains, a.placement)) == 9);
  DenseAssignment b = assign_gains_dense(graph(2, {{1, 2}, {1, 2}, {1, 1}, {2, 2}}), 2);
  CHECK(b.rank == 4);
}

TEST_CASE("gammah") {
  auto inv = SymmetryGroup::inversion(2);
  GainGraph h = build_gammah(inv);
  CHECK(h.graph.vertex_count() == 3 + 3 * 2);
  CHECK(validate(h).empty());
  CHECK(is_symmetrically_rigid(h).rigid);
  CHECK_FALSE(is_symmetrically_rigid(with_identity_gains(h.graph, inv)).rigid);
}

TEST_CASE("joins and chained copies") {
  MultiGraph a = graph(3, {{1, 2}, {1, 2}, {2, 3}, {1, 3}, {3, 3}});
  MultiGraph j = join_k_edges(a, a, 2);
  CHECK(j.vertex_count() == 6);
  CHECK(j.edge_count() == 12);
  CHECK(j.between(0, 3).size() == 1);
  CHECK(j.between(1, 4).size() == 1);

  QEpsilon q = build_qepsilon(fixtures::quarter_five(1), 0.9609375, 1, 0.5, 0.05);
  CHECK(q.copies == 17);
  CHECK(q.graph.vertex_count() == 85);
  CHECK(q.graph.edge_count() == 17 * 9 + 16);
  CHECK(std::abs(q.predicted - 0.5) < 0.05);

  MultiGraph big = build_bigprob(a, 3, 2);
  CHECK(big.vertex_count() == 2 + 9);
}
