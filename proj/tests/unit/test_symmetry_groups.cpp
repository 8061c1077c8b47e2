#include <doctest.h>

#include "fixtures.hpp"
#include "symrigid/errors.hpp"
#include "symrigid/symmetry_groups.hpp"

#include <cmath>
#include <numbers>
#include <set>

using namespace symrigid;

namespace {

Eigen::MatrixXd rotation2(double a) {
  Eigen::MatrixXd m(2, 2);
  m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return m;
}

}  // namespace

TEST_CASE("orders of the finite families") {
  CHECK(SymmetryGroup::cyclic(4).order() == 4);
  CHECK(SymmetryGroup::cyclic(7).order() == 7);
  CHECK(SymmetryGroup::reflection().order() == 2);
  CHECK(SymmetryGroup::dihedral(2).order() == 4);
  CHECK(SymmetryGroup::dihedral(4).order() == 8);
  CHECK(SymmetryGroup::klein3d().order() == 4);
  CHECK(SymmetryGroup::signed_permutation(2).order() == 8);
  CHECK(SymmetryGroup::signed_permutation(4).order() == 384);
  CHECK(SymmetryGroup::inversion(3).order() == 2);
  CHECK(SymmetryGroup::trivial(3).order() == 1);
}

TEST_CASE("trivial motion dimension") {
  CHECK(trivial_flex_dimension(SymmetryGroup::cyclic(4)) == 1);
  CHECK(trivial_flex_dimension(SymmetryGroup::cyclic(2)) == 1);
  CHECK(trivial_flex_dimension(SymmetryGroup::reflection()) == 1);
  CHECK(trivial_flex_dimension(SymmetryGroup::dihedral(3)) == 0);
  CHECK(trivial_flex_dimension(SymmetryGroup::dihedral(2)) == 0);
  CHECK(trivial_flex_dimension(SymmetryGroup::klein3d()) == 0);
  CHECK(trivial_flex_dimension(SymmetryGroup::trivial(2)) == 3);
  CHECK(trivial_flex_dimension(SymmetryGroup::trivial(3)) == 6);
  CHECK(trivial_flex_dimension(SymmetryGroup::translations(Eigen::MatrixXd::Identity(3, 3))) == 3);
  CHECK(trivial_flex_dimension(SymmetryGroup::trans_inv(Eigen::MatrixXd::Identity(2, 2))) == 0);
}

TEST_CASE("group laws hold on every finite family") {
  for (const auto& g : fixtures::small_finite_groups()) {
    auto all = g.enumerate();
    CHECK(all.size() == g.order());
    std::set<GroupElement> distinct(all.begin(), all.end());
    CHECK(distinct.size() == all.size());
    CHECK(g.is_identity(all.front()));
    for (const auto& a : all) {
      CHECK(g.is_identity(g.compose(a, g.inverse(a))));
      Isometry iso = g.represent(a);
      CHECK(iso.is_orthogonal());
      CHECK(g.from_isometry(iso) == a);
      for (const auto& b : all) {
        Isometry ab = g.represent(g.compose(a, b));
        CHECK((ab.linear - g.linear_part(a) * g.linear_part(b)).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("cyclic elements are rotations by multiples of the base angle") {
  auto c4 = SymmetryGroup::cyclic(4);
  Eigen::MatrixXd quarter = c4.linear_part(c4.element({1}));
  CHECK((quarter - rotation2(std::numbers::pi / 2)).norm() < 1e-12);
  CHECK(c4.power(c4.element({1}), 4) == c4.identity());
  CHECK(c4.inverse(c4.element({1})) == c4.element({3}));
}

TEST_CASE("generated closure finds the quarter-turn group") {
  auto g = SymmetryGroup::generated({Isometry::from_linear(rotation2(std::numbers::pi / 2))});
  CHECK(g.is_finite());
  CHECK(g.order() == 4);
  CHECK(trivial_flex_dimension(g) == 1);
}

TEST_CASE("translation groups are infinite and refuse enumeration") {
  auto t = SymmetryGroup::translations(Eigen::MatrixXd::Identity(2, 2));
  CHECK_FALSE(t.is_finite());
  CHECK_THROWS_AS(t.order(), Error);
  auto a = t.element({1, -2});
  CHECK(t.compose(a, t.inverse(a)) == t.identity());
  CHECK((t.represent(a).translation - Eigen::Vector2d(1, -2)).norm() < 1e-12);
  CHECK(t.sample_elements(5).size() == 5);
}

TEST_CASE("point-group product keeps lattice and point parts") {
  auto tp = SymmetryGroup::trans_point(Eigen::MatrixXd::Identity(3, 3), SymmetryGroup::klein3d());
  auto points = tp.point_group().enumerate();
  ElementCode code{1, 0, 0};
  code.insert(code.end(), points[1].code().begin(), points[1].code().end());
  auto g = tp.element(code);
  auto sq = tp.compose(g, g);
  // a half-turn composed with itself cancels its point part
  CHECK((tp.linear_part(sq) - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK(tp.from_isometry(tp.represent(g)) == g);
}

TEST_CASE("mixing elements of different groups is rejected") {
  auto a = SymmetryGroup::cyclic(4), b = SymmetryGroup::cyclic(5);
  CHECK_THROWS_AS(a.compose(a.identity(), b.element({1})), Error);
}

TEST_CASE("dense surrogate contains the near rotations and the axis reflection") {
  auto g = dense_surrogate(3, {0.01, 0.01});
  CHECK_FALSE(g.is_finite());  // an irrational angle never closes up
  auto r = approx_rotation(g, 1, 0.01);
  CHECK((g.linear_part(r) - plane_rotation(3, 1, 0.01).linear).norm() < 1e-6);
  auto s = g.from_isometry(last_axis_reflection(3));
  CHECK(g.is_identity(g.compose(s, s)));
}
