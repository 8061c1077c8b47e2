#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symrigid {

// Affine isometry x -> linear * x + translation.
struct Isometry {
  Eigen::MatrixXd linear;
  Eigen::VectorXd translation;

  static Isometry identity(int d);
  static Isometry from_linear(const Eigen::MatrixXd& linear);

  int dimension() const { return static_cast<int>(linear.rows()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return linear * x + translation; }
  Isometry then_after(const Isometry& inner) const;  // this o inner
  Isometry inverse() const;
  bool is_orthogonal(double tol = 1e-9) const;
};

enum class GroupKind {
  trivial,
  cyclic,
  reflection,
  dihedral,
  klein3d,
  signed_permutation,
  inversion,
  translations,
  trans_inv,
  trans_point,
  generated,
};

const char* to_string(GroupKind kind);

using ElementCode = std::vector<std::int64_t>;

class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(std::uint64_t group_id, ElementCode code) : group_id_(group_id), code_(std::move(code)) {}

  std::uint64_t group_id() const { return group_id_; }
  const ElementCode& code() const { return code_; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend std::strong_ordering operator<=>(const GroupElement&, const GroupElement&) = default;

 private:
  std::uint64_t group_id_ = 0;
  ElementCode code_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& e) const noexcept;
};

namespace detail {
struct GroupImpl;
}

class SymmetryGroup {
 public:
  SymmetryGroup();  // trivial group in the plane
  static SymmetryGroup trivial(int d);
  static SymmetryGroup cyclic(int n);
  // Order-2 group generated by the reflection in the x-axis.
  static SymmetryGroup reflection();
  // Order 2n: rotations by 2*pi/n and the reflection in the x-axis.
  static SymmetryGroup dihedral(int n);
  // Identity and the half-turns about the three coordinate axes.
  static SymmetryGroup klein3d();
  static SymmetryGroup signed_permutation(int d);
  // {I, -I} in dimension d.
  static SymmetryGroup inversion(int d);
  // Rows of `basis` are the lattice generators.
  static SymmetryGroup translations(const Eigen::MatrixXd& basis);
  static SymmetryGroup trans_inv(const Eigen::MatrixXd& basis);
  // Lattice translations composed with a finite point group that maps the lattice to itself.
  static SymmetryGroup trans_point(const Eigen::MatrixXd& basis, const SymmetryGroup& point);
  // Closure of explicit generators; elements are identified by their matrices snapped to a 1e-9 grid.
  // Closures larger than `cap` are treated as infinite.
  static SymmetryGroup generated(const std::vector<Isometry>& generators, std::size_t cap = 10000);

  GroupKind kind() const;
  int dimension() const;
  bool is_finite() const;
  std::size_t order() const;  // throws unsupported_enumeration when infinite
  std::uint64_t id() const;
  std::string descriptor() const;

  // Kind parameters, for serialization.
  int n() const;
  const Eigen::MatrixXd& basis() const;
  const SymmetryGroup& point_group() const;
  const std::vector<Isometry>& generating_isometries() const;
  std::size_t cap() const;

  GroupElement identity() const;
  GroupElement compose(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, std::int64_t k) const;
  bool is_identity(const GroupElement& a) const { return a == identity(); }

  // Identity first; deterministic order.
  std::vector<GroupElement> enumerate() const;
  std::vector<GroupElement> generators() const;
  // First `count` distinct elements in breadth-first word order (identity first). Works for infinite groups.
  std::vector<GroupElement> sample_elements(std::size_t count) const;

  Isometry represent(const GroupElement& a) const;
  Eigen::MatrixXd linear_part(const GroupElement& a) const;

  GroupElement element(const ElementCode& code) const;
  // Finds the element represented by `iso`; throws invalid_argument if none.
  GroupElement from_isometry(const Isometry& iso, double tol = 1e-6) const;
  bool contains(const GroupElement& a) const { return a.group_id() == id(); }

  std::string to_string(const GroupElement& a) const;

  friend bool operator==(const SymmetryGroup& a, const SymmetryGroup& b) { return a.id() == b.id(); }

 private:
  explicit SymmetryGroup(std::shared_ptr<const detail::GroupImpl> impl) : impl_(std::move(impl)) {}
  void check(const GroupElement& a) const;
  std::shared_ptr<const detail::GroupImpl> impl_;
};

struct RigidMotion {
  Eigen::MatrixXd skew;       // T
  Eigen::VectorXd translation;  // x
};

// Basis of {(T, x) : T skew, T L = L T and T t + x = L x for every generator (L, t)}.
std::vector<RigidMotion> symmetric_motion_basis(const SymmetryGroup& group);
int trivial_flex_dimension(const SymmetryGroup& group);

// Rotation in the plane of f_k and f_d with R f_d = cos(theta) f_d + sin(theta) f_k (k is 1-based, k < d).
Isometry plane_rotation(int d, int k, double theta);
// R_k(pi - theta/2)^-1 sigma R_k(pi - theta/2), sigma the reflection negating f_d.
Isometry near_reflection(int d, int k, double theta);
Isometry last_axis_reflection(int d);

// Generated group on R_k(theta_k), S_k(theta_k) for k < d and the f_d reflection.
SymmetryGroup dense_surrogate(int d, const std::vector<double>& thetas);
GroupElement approx_rotation(const SymmetryGroup& group, int k, double theta);
GroupElement approx_reflection(const SymmetryGroup& group, int k, double theta);

}  // namespace symrigid
