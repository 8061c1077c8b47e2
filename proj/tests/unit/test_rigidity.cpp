#include <doctest.h>

#include "fixtures.hpp"
#include "symrigid/rigidity.hpp"

using namespace symrigid;

TEST_CASE("numerical rank basics") {
  CHECK(numerical_rank(Eigen::MatrixXd::Zero(4, 3)) == 0);
  CHECK(numerical_rank(Eigen::MatrixXd::Identity(5, 5)) == 5);
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  CHECK(numerical_rank(m) == 2);
  // block lower-triangular: an invertible lower-right block adds its full size
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(5, 5);
  big.block(0, 0, 3, 3) = m;
  big.block(3, 0, 2, 3).setOnes();
  big.block(3, 3, 2, 2) << 2, 1, 1, 3;
  CHECK(numerical_rank(big) == 4);
}

TEST_CASE("orbit matrix of the covering example") {
  auto gg = fixtures::covering_example();
  std::mt19937_64 rng(11);
  Placement p = random_placement(3, gg.group, rng);
  Eigen::MatrixXd m = orbit_rigidity_matrix(gg, p);
  CHECK(m.rows() == 5);
  CHECK(m.cols() == 6);
  CHECK(numerical_rank(m) == 5);
}

TEST_CASE("orbit rows match a hand computation") {
  auto c4 = SymmetryGroup::cyclic(4);
  GainGraph gg(MultiGraph(2), c4, {});
  gg.add_edge(0, 1, c4.element({1}));
  gg.add_edge(1, 1, c4.element({1}));
  Placement p(2, 2);
  p << 1, 2, 3, 5;
  Eigen::MatrixXd m = orbit_rigidity_matrix(gg, p);
  // quarter turn of (3,5) is (-5,3)
  Eigen::RowVectorXd edge(4), loop(4);
  edge << 1 + 5, 2 - 3, 3 - 2, 5 + 1;  // p0 - r p1 | p1 - r^-1 p0, with r^-1 (1,2) = (2,-1)
  loop << 0, 0, 2 * 3, 2 * 5;  // 2p - rp - r^-1 p, and rp + r^-1 p = 0 for a quarter turn
  CHECK((m.row(0) - edge).norm() < 1e-12);
  CHECK((m.row(1) - loop).norm() < 1e-12);
}

TEST_CASE("known verdicts") {
  CHECK(is_symmetrically_rigid(fixtures::covering_example()).rigid);
  RankReport flex = is_symmetrically_rigid(fixtures::covering_example(true));
  CHECK_FALSE(flex.rigid);
  CHECK(flex.trivial_dim == 1);

  auto d2 = SymmetryGroup::dihedral(2);
  GainGraph k44(fixtures::graph(2, {{1, 2}, {1, 2}, {1, 2}, {1, 2}}), d2, d2.enumerate());
  RankReport r = is_symmetrically_rigid(k44);
  CHECK_FALSE(r.rigid);
  CHECK(r.rank == 3);
}

TEST_CASE("orbit nullity equals symmetric kernel of the cover") {
  std::mt19937_64 rng(21);
  auto gg = fixtures::covering_example();
  for (int t = 0; t < 3; ++t) {
    Placement p = random_placement(3, gg.group, rng);
    CHECK(6 - numerical_rank(orbit_rigidity_matrix(gg, p)) == symmetric_kernel_dim(gg, p));
  }
  auto flex = fixtures::covering_example(true);
  Placement p = random_placement(3, flex.group, rng);
  CHECK(6 - numerical_rank(orbit_rigidity_matrix(flex, p)) == symmetric_kernel_dim(flex, p));
}

TEST_CASE("trivial flex dimension at a placement") {
  auto c4 = SymmetryGroup::cyclic(4);
  std::mt19937_64 rng(2);
  CHECK(trivial_flex_dim_at(c4, random_placement(3, c4, rng)) == 1);
  // every point at the centre: the rotation moves nothing
  CHECK(trivial_flex_dim_at(c4, Placement::Zero(3, 2)) == 0);
  auto triv = SymmetryGroup::trivial(2);
  CHECK(trivial_flex_dim_at(triv, random_placement(3, triv, rng)) == 3);
}

TEST_CASE("seeded placements are reproducible") {
  auto c4 = SymmetryGroup::cyclic(4);
  std::mt19937_64 a(derive_seed(5, 0)), b(derive_seed(5, 0));
  CHECK(random_placement(4, c4, a) == random_placement(4, c4, b));
  CHECK(derive_seed(5, 0) != derive_seed(5, 1));
  CHECK(derive_seed(5, 1) != derive_seed(6, 1));
  std::mt19937_64 c(1);
  Placement p = random_placement(6, c4, c);
  CHECK_FALSE(placement_degenerate(p, c4));
  Placement bad = p;
  bad.row(1) = bad.row(0);
  CHECK(placement_degenerate(bad, c4));
}

TEST_CASE("consensus keeps the maximal rank") {
  auto gg = fixtures::covering_example();
  RankReport r = rigidity_consensus(gg, 3, 1, 4);
  CHECK(r.rigid);
  CHECK_FALSE(r.flagged);
  CHECK(r.rank == 5);
}

TEST_CASE("batched evaluator agrees with the direct path") {
  auto c4 = SymmetryGroup::cyclic(4);
  GainMapSpace space(fixtures::graph(3, {{1, 2}, {1, 2}, {2, 3}, {1, 3}, {3, 3}}), c4);
  std::mt19937_64 rng(9);
  std::vector<Placement> ps{random_placement(3, c4, rng)};
  OrbitEvaluator eval(space.graph(), c4, space.elements(), space.inverse_index(), ps);
  std::vector<int> gains;
  for (std::uint64_t i = 0; i < space.count_u64(); ++i) {
    space.decode(i, gains);
    CHECK(eval.rank(gains, 0) == rank_at(space.gain_graph(gains), ps[0]).rank);
  }
}
