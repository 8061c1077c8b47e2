#include "symrigid/symmetry_groups.hpp"

#include "symrigid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_map>

namespace symrigid {

// ---------------------------------------------------------------------------
// Isometry

Isometry Isometry::identity(int d) {
  return {Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Zero(d)};
}

Isometry Isometry::from_linear(const Eigen::MatrixXd& linear) {
  return {linear, Eigen::VectorXd::Zero(linear.rows())};
}

Isometry Isometry::then_after(const Isometry& inner) const {
  return {linear * inner.linear, linear * inner.translation + translation};
}

Isometry Isometry::inverse() const {
  Eigen::MatrixXd lt = linear.transpose();
  return {lt, -(lt * translation)};
}

bool Isometry::is_orthogonal(double tol) const {
  Eigen::MatrixXd e = linear.transpose() * linear - Eigen::MatrixXd::Identity(linear.rows(), linear.cols());
  return e.cwiseAbs().maxCoeff() <= tol;
}

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::trivial: return "trivial";
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::reflection: return "reflection";
    case GroupKind::dihedral: return "dihedral";
    case GroupKind::klein3d: return "klein3d";
    case GroupKind::signed_permutation: return "signed_perm";
    case GroupKind::inversion: return "inversion";
    case GroupKind::translations: return "translations";
    case GroupKind::trans_inv: return "trans_inv";
    case GroupKind::trans_point: return "trans_point";
    case GroupKind::generated: return "generated";
  }
  return "unknown";
}

std::size_t GroupElementHash::operator()(const GroupElement& e) const noexcept {
  std::uint64_t h = e.group_id() ^ 0x9e3779b97f4a7c15ULL;
  for (auto c : e.code()) {
    h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

namespace {

struct CodeHash {
  std::size_t operator()(const ElementCode& c) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : c) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_matrix(const Eigen::MatrixXd& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += i ? ";" : "";
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += (j ? "," : "") + fmt_double(m(i, j));
  }
  return s + "]";
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// cos/sin of 2*pi*k/n, exact at multiples of a quarter turn.
std::pair<double, double> turn(std::int64_t k, std::int64_t n) {
  k = mod(k, n);
  if ((4 * k) % n == 0) {
    switch ((4 * k) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(a), std::sin(a)};
}

Eigen::MatrixXd rot2(std::int64_t k, std::int64_t n) {
  auto [c, s] = turn(k, n);
  Eigen::MatrixXd r(2, 2);
  r << c, -s, s, c;
  return r;
}

}  // namespace

namespace detail {

struct GroupImpl {
  std::string desc;
  std::uint64_t id = 0;
  int n = 0;
  Eigen::MatrixXd basis;
  std::shared_ptr<SymmetryGroup> point;
  std::vector<Isometry> gens;
  std::size_t cap = 0;

  virtual ~GroupImpl() = default;
  virtual GroupKind kind() const = 0;
  virtual int dim() const = 0;
  virtual bool finite() const = 0;
  virtual ElementCode identity() const = 0;
  virtual ElementCode compose(const ElementCode& a, const ElementCode& b) const = 0;
  virtual ElementCode inverse(const ElementCode& a) const = 0;
  virtual Isometry represent(const ElementCode& a) const = 0;
  virtual std::vector<ElementCode> generators() const = 0;
  virtual bool valid(const ElementCode& a) const = 0;
  virtual std::string show(const ElementCode& a) const {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
  }

  virtual std::vector<ElementCode> enumerate() const {
    if (!finite()) throw Error(ErrorCode::unsupported_enumeration, "group " + desc + " is infinite");
    std::vector<ElementCode> out = closure(2'000'000);
    std::sort(out.begin(), out.end());
    auto idc = identity();
    auto it = std::find(out.begin(), out.end(), idc);
    std::rotate(out.begin(), it, it + 1);
    return out;
  }

  virtual std::optional<ElementCode> find(const Isometry& iso, double tol) const {
    if (!finite()) return std::nullopt;
    for (const auto& c : enumerate()) {
      Isometry r = represent(c);
      if ((r.linear - iso.linear).cwiseAbs().maxCoeff() <= tol &&
          (r.translation - iso.translation).cwiseAbs().maxCoeff() <= tol)
        return c;
    }
    return std::nullopt;
  }

  // Breadth-first closure under the generators; stops after `limit` elements.
  std::vector<ElementCode> closure(std::size_t limit) const {
    std::unordered_map<ElementCode, bool, CodeHash> seen;
    std::vector<ElementCode> order;
    std::deque<ElementCode> queue;
    auto idc = identity();
    seen[idc] = true;
    order.push_back(idc);
    queue.push_back(idc);
    auto g = generators();
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      for (const auto& x : g) {
        auto nxt = compose(cur, x);
        if (seen.emplace(nxt, true).second) {
          if (order.size() >= limit) throw Error(ErrorCode::size_cap, "closure of " + desc + " exceeds " + std::to_string(limit));
          order.push_back(nxt);
          queue.push_back(std::move(nxt));
        }
      }
    }
    return order;
  }
};

namespace {

struct TrivialImpl : GroupImpl {
  int d;
  explicit TrivialImpl(int d_) : d(d_) {}
  GroupKind kind() const override { return GroupKind::trivial; }
  int dim() const override { return d; }
  bool finite() const override { return true; }
  ElementCode identity() const override { return {}; }
  ElementCode compose(const ElementCode&, const ElementCode&) const override { return {}; }
  ElementCode inverse(const ElementCode&) const override { return {}; }
  Isometry represent(const ElementCode&) const override { return Isometry::identity(d); }
  std::vector<ElementCode> generators() const override { return {}; }
  bool valid(const ElementCode& a) const override { return a.empty(); }
  std::string show(const ElementCode&) const override { return "1"; }
};

struct CyclicImpl : GroupImpl {
  GroupKind kind() const override { return GroupKind::cyclic; }
  int dim() const override { return 2; }
  bool finite() const override { return true; }
  ElementCode identity() const override { return {0}; }
  ElementCode compose(const ElementCode& a, const ElementCode& b) const override { return {mod(a[0] + b[0], n)}; }
  ElementCode inverse(const ElementCode& a) const override { return {mod(-a[0], n)}; }
  Isometry represent(const ElementCode& a) const override { return Isometry::from_linear(rot2(a[0], n)); }
  std::vector<ElementCode> generators() const override {
    if (n == 1) return {};
    return {{1}};
  }
  bool valid(const ElementCode& a) const override { return a.size() == 1 && a[0] >= 0 && a[0] < n; }
  std::vector<ElementCode> enumerate() const override {
    std::vector<ElementCode> out;
    for (int k = 0; k < n; ++k) out.push_back({k});
    return out;
  }
  std::string show(const ElementCode& a) const override {
    if (a[0] == 0) return "1";
    return a[0] == 1 ? "r" : "r^" + std::to_string(a[0]);
  }
};

// r^k s^b with s the reflection in the x-axis; n = 1 is the reflection group.
struct DihedralImpl : GroupImpl {
  GroupKind k_;
  explicit DihedralImpl(GroupKind k) : k_(k) {}
  GroupKind kind() const override { return k_; }
  int dim() const override { return 2; }
  bool finite() const override { return true; }
  ElementCode identity() const override { return {0, 0}; }
  ElementCode compose(const ElementCode& a, const ElementCode& b) const override {
    return {mod(a[0] + (a[1] ? -b[0] : b[0]), n), a[1] ^ b[1]};
  }
  ElementCode inverse(const ElementCode& a) const override {
    if (a[1]) return a;
    return {mod(-a[0], n), 0};
  }
  Isometry represent(const ElementCode& a) const override {
    Eigen::MatrixXd m = rot2(a[0], n);
    if (a[1]) m.col(1) *= -1.0;
    return Isometry::from_linear(m);
  }
  std::vector<ElementCode> generators() const override {
    if (n == 1) return {{0, 1}};
    return {{1, 0}, {0, 1}};
  }
  bool valid(const ElementCode& a) const override {
    return a.size() == 2 && a[0] >= 0 && a[0] < n && (a[1] == 0 || a[1] == 1);
  }
  std::vector<ElementCode> enumerate() const override {
    std::vector<ElementCode> out;
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < n; ++k) out.push_back({k, b});
    return out;
  }
  std::string show(const ElementCode& a) const override {
    std::string r = a[0] == 0 ? "" : (a[0] == 1 ? "r" : "r^" + std::to_string(a[0]));
    if (a[1]) r += r.empty() ? "s" : " s";
    return r.empty() ? "1" : r;
  }
};

struct KleinImpl : GroupImpl {
  GroupKind kind() const override { return GroupKind::klein3d; }
  int dim() const override { return 3; }
  bool finite() const override { return true; }
  ElementCode identity() const override { return {0}; }
  ElementCode compose(const ElementCode& a, const ElementCode& b) const override { return {a[0] ^ b[0]}; }
  ElementCode inverse(const ElementCode& a) const override { return a; }
  Isometry represent(const ElementCode& a) const override {
    Eigen::Vector3d diag(1, 1, 1);
    if (a[0] == 1) diag = {1, -1, -1};
    if (a[0] == 2) diag = {-1, 1, -1};
    if (a[0] == 3) diag = {-1, -1, 1};
    return Isometry::from_linear(Eigen::MatrixXd(diag.asDiagonal()));
  }
  std::vector<ElementCode> generators() const override { return {{1}, {2}}; }
  bool valid(const ElementCode& a) const override { return a.size() == 1 && a[0] >= 0 && a[0] < 4; }
  std::vector<ElementCode> enumerate() const override { return {{0}, {1}, {2}, {3}}; }
  std::string show(const ElementCode& a) const override {
    static const char* names[] = {"1", "Rx", "Ry", "Rz"};
    return names[a[0]];
  }
};

// Column i of the matrix is sign(c[i]) * e_{|c[i]|-1}.
struct SignedPermImpl : GroupImpl {
  int d;
  explicit SignedPermImpl(int d_) : d(d_) {}
  GroupKind kind() const override { return GroupKind::signed_permutation; }
  int dim() const override { return d; }
  bool finite() const override { return true; }
  ElementCode identity() const override {
    ElementCode c(d);
    for (int i = 0; i < d; ++i) c[i] = i + 1;
    return c;
  }
  ElementCode compose(const ElementCode& a, const ElementCode& b) const override {
    ElementCode c(d);
    for (int i = 0; i < d; ++i) {
      std::int64_t s = b[i] < 0 ? -1 : 1;
      c[i] = s * a[std::abs(b[i]) - 1];
    }
    return c;
  }
  ElementCode inverse(const ElementCode& a) const override {
    ElementCode c(d);
    for (int i = 0; i < d; ++i) {
      std::int64_t s = a[i] < 0 ? -1 : 1;
      c[std::abs(a[i]) - 1] = s * (i + 1);
    }
    return c;
  }
  Isometry represent(const ElementCode& a) const override {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) m(std::abs(a[i]) - 1, i) = a[i] < 0 ? -1.0 : 1.0;
    return Isometry::from_linear(m);
  }
  std::vector<ElementCode> generators() const override {
    std::vector<ElementCode> g;
    auto flip = identity();
    flip[0] = -1;
    g.push_back(flip);
    for (int i = 0; i + 1 < d; ++i) {
      auto t = identity();
      std::swap(t[i], t[i + 1]);
      g.push_back(t);
    }
    return g;
  }
  bool valid(const ElementCode& a) const override {
    if (static_cast<int>(a.size()) != d) return false;
    std::vector<bool> hit(d, false);
    for (auto v : a) {
      auto k = std::abs(v);
      if (k < 1 || k > d || hit[k - 1]) return false;
      hit[k - 1] = true;
    }
    return true;
  }
};

struct InversionImpl : GroupImpl {
  int d;
  explicit InversionImpl(int d_) : d(d_) {}
  GroupKind kind() const override { return GroupKind::inversion; }
  int dim() const override { return d; }
  bool finite() const override { return true; }
  ElementCode identity() const override { return {0}; }
  ElementCode compose(const ElementCode& a, const ElementCode& b) const override { return {a[0] ^ b[0]}; }
  ElementCode inverse(const ElementCode& a) const override { return a; }
  Isometry represent(const ElementCode& a) const override {
    return Isometry::from_linear((a[0] ? -1.0 : 1.0) * Eigen::MatrixXd::Identity(d, d));
  }
  std::vector<ElementCode> generators() const override { return {{1}}; }
  bool valid(const ElementCode& a) const override { return a.size() == 1 && (a[0] == 0 || a[0] == 1); }
  std::vector<ElementCode> enumerate() const override { return {{0}, {1}}; }
  std::string show(const ElementCode& a) const override { return a[0] ? "-I" : "1"; }
};

Eigen::VectorXd lattice_vector(const Eigen::MatrixXd& basis, const ElementCode& a, std::size_t offset = 0) {
  Eigen::VectorXd t = Eigen::VectorXd::Zero(basis.cols());
  for (Eigen::Index i = 0; i < basis.rows(); ++i) t += static_cast<double>(a[offset + i]) * basis.row(i).transpose();
  return t;
}

std::optional<std::vector<std::int64_t>> lattice_coords(const Eigen::MatrixXd& basis, const Eigen::VectorXd& t,
                                                        double tol) {
  Eigen::VectorXd x = basis.transpose().colPivHouseholderQr().solve(t);
  std::vector<std::int64_t> n(basis.rows());
  Eigen::VectorXd back = Eigen::VectorXd::Zero(basis.cols());
  for (Eigen::Index i = 0; i < basis.rows(); ++i) {
    n[i] = std::llround(x(i));
    back += static_cast<double>(n[i]) * basis.row(i).transpose();
  }
  if ((back - t).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return n;
}

struct TranslationsImpl : GroupImpl {
  GroupKind kind() const override { return GroupKind::translations; }
  int dim() const override { return static_cast<int>(basis.cols()); }
  bool finite() const override { return basis.rows() == 0; }
  ElementCode identity() const override { return ElementCode(basis.rows(), 0); }
  ElementCode compose(const ElementCode& a, const ElementCode& b) const override {
    ElementCode c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
  }
  ElementCode inverse(const ElementCode& a) const override {
    ElementCode c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return c;
  }
  Isometry represent(const ElementCode& a) const override {
    return {Eigen::MatrixXd::Identity(dim(), dim()), lattice_vector(basis, a)};
  }
  std::vector<ElementCode> generators() const override {
    std::vector<ElementCode> g;
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      ElementCode c(basis.rows(), 0);
      c[i] = 1;
      g.push_back(c);
    }
    return g;
  }
  bool valid(const ElementCode& a) const override { return static_cast<Eigen::Index>(a.size()) == basis.rows(); }
  std::optional<ElementCode> find(const Isometry& iso, double tol) const override {
    if ((iso.linear - Eigen::MatrixXd::Identity(dim(), dim())).cwiseAbs().maxCoeff() > tol) return std::nullopt;
    return lattice_coords(basis, iso.translation, tol);
  }
  std::string show(const ElementCode& a) const override { return "t" + GroupImpl::show(a); }
};

// Code = lattice coordinates followed by the point element's code.
struct TransPointImpl : GroupImpl {
  GroupKind k_;
  std::map<ElementCode, Eigen::MatrixXd> action;  // point code -> integer matrix on lattice coordinates
  std::vector<ElementCode> point_codes;
  std::size_t r = 0;

  TransPointImpl(GroupKind k, const Eigen::MatrixXd& b, const SymmetryGroup& p) : k_(k) {
    basis = b;
    point = std::make_shared<SymmetryGroup>(p);
    r = static_cast<std::size_t>(b.rows());
    if (!p.is_finite()) throw Error(ErrorCode::invalid_argument, "point group must be finite");
    for (const auto& g : p.enumerate()) {
      Eigen::MatrixXd a(r, r);
      Eigen::MatrixXd lin = p.linear_part(g);
      for (std::size_t j = 0; j < r; ++j) {
        auto coords = lattice_coords(b, lin * b.row(j).transpose(), 1e-9);
        if (!coords) throw Error(ErrorCode::invalid_argument, "point group does not preserve the lattice");
        for (std::size_t i = 0; i < r; ++i) a(i, j) = static_cast<double>((*coords)[i]);
      }
      action[g.code()] = a;
      point_codes.push_back(g.code());
    }
  }

  ElementCode lattice_part(const ElementCode& a) const { return ElementCode(a.begin(), a.begin() + r); }
  ElementCode point_part(const ElementCode& a) const { return ElementCode(a.begin() + r, a.end()); }
  GroupElement point_el(const ElementCode& a) const { return GroupElement(point->id(), point_part(a)); }

  GroupKind kind() const override { return k_; }
  int dim() const override { return static_cast<int>(basis.cols()); }
  bool finite() const override { return r == 0; }
  ElementCode identity() const override {
    ElementCode c(r, 0);
    auto pc = point->identity().code();
    c.insert(c.end(), pc.begin(), pc.end());
    return c;
  }
  ElementCode compose(const ElementCode& a, const ElementCode& b) const override {
    const Eigen::MatrixXd& act = action.at(point_part(a));
    ElementCode c(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < r; ++j) s += act(i, j) * static_cast<double>(b[j]);
      c[i] = a[i] + std::llround(s);
    }
    auto pc = point->compose(point_el(a), point_el(b)).code();
    c.insert(c.end(), pc.begin(), pc.end());
    return c;
  }
  ElementCode inverse(const ElementCode& a) const override {
    auto pinv = point->inverse(point_el(a));
    const Eigen::MatrixXd& act = action.at(pinv.code());
    ElementCode c(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < r; ++j) s += act(i, j) * static_cast<double>(a[j]);
      c[i] = -std::llround(s);
    }
    c.insert(c.end(), pinv.code().begin(), pinv.code().end());
    return c;
  }
  Isometry represent(const ElementCode& a) const override {
    return {point->linear_part(point_el(a)), lattice_vector(basis, a)};
  }
  std::vector<ElementCode> generators() const override {
    std::vector<ElementCode> g;
    auto pid = point->identity().code();
    for (std::size_t i = 0; i < r; ++i) {
      ElementCode c(r, 0);
      c[i] = 1;
      c.insert(c.end(), pid.begin(), pid.end());
      g.push_back(c);
    }
    for (const auto& pg : point->generators()) {
      ElementCode c(r, 0);
      c.insert(c.end(), pg.code().begin(), pg.code().end());
      g.push_back(c);
    }
    return g;
  }
  bool valid(const ElementCode& a) const override {
    return a.size() >= r && action.count(point_part(a)) > 0;
  }
  std::optional<ElementCode> find(const Isometry& iso, double tol) const override {
    for (const auto& pc : point_codes) {
      if ((point->linear_part(GroupElement(point->id(), pc)) - iso.linear).cwiseAbs().maxCoeff() > tol) continue;
      auto n = lattice_coords(basis, iso.translation, tol);
      if (!n) return std::nullopt;
      ElementCode c(n->begin(), n->end());
      c.insert(c.end(), pc.begin(), pc.end());
      return c;
    }
    return std::nullopt;
  }
  std::string show(const ElementCode& a) const override {
    auto pt = point->to_string(point_el(a));
    auto lt = "t" + GroupImpl::show(lattice_part(a));
    return pt == "1" ? lt : lt + " " + pt;
  }
};

constexpr double kSnap = 1e9;

ElementCode snap(const Isometry& iso) {
  ElementCode c;
  int d = iso.dimension();
  c.reserve(d * d + d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c.push_back(std::llround(iso.linear(i, j) * kSnap));
  for (int i = 0; i < d; ++i) c.push_back(std::llround(iso.translation(i) * kSnap));
  return c;
}

Isometry unsnap(const ElementCode& c, int d) {
  Isometry iso = Isometry::identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) iso.linear(i, j) = static_cast<double>(c[i * d + j]) / kSnap;
  for (int i = 0; i < d; ++i) iso.translation(i) = static_cast<double>(c[d * d + i]) / kSnap;
  return iso;
}

// Elements carry snapped codes; the unrounded isometry of every element produced by a group
// operation is remembered so that representations stay accurate to machine precision.
struct GeneratedImpl : GroupImpl {
  int d = 0;
  bool is_finite = false;
  std::vector<ElementCode> elements;
  std::set<ElementCode> element_set;
  mutable std::mutex mu;
  mutable std::unordered_map<ElementCode, Isometry, CodeHash> exact;

  GeneratedImpl(const std::vector<Isometry>& g, int dim_, std::size_t cap_) : d(dim_) {
    gens = g;
    cap = cap_;
    for (const auto& x : gens) remember(x);
    remember(Isometry::identity(d));
    try {
      elements = closure(cap);
      is_finite = true;
      element_set.insert(elements.begin(), elements.end());
    } catch (const Error&) {
      is_finite = false;
    }
  }

  ElementCode remember(const Isometry& iso) const {
    auto c = snap(iso);
    std::lock_guard<std::mutex> lock(mu);
    exact.emplace(c, iso);
    return c;
  }

  Isometry lookup(const ElementCode& c) const {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = exact.find(c);
      if (it != exact.end()) return it->second;
    }
    return unsnap(c, d);
  }

  GroupKind kind() const override { return GroupKind::generated; }
  int dim() const override { return d; }
  bool finite() const override { return is_finite; }
  ElementCode identity() const override { return snap(Isometry::identity(d)); }
  ElementCode compose(const ElementCode& a, const ElementCode& b) const override {
    return remember(lookup(a).then_after(lookup(b)));
  }
  ElementCode inverse(const ElementCode& a) const override { return remember(lookup(a).inverse()); }
  Isometry represent(const ElementCode& a) const override { return lookup(a); }
  std::vector<ElementCode> generators() const override {
    std::vector<ElementCode> out;
    for (const auto& x : gens) out.push_back(snap(x));
    return out;
  }
  bool valid(const ElementCode& a) const override {
    if (static_cast<int>(a.size()) != d * d + d) return false;
    if (is_finite) return element_set.count(a) > 0;
    return unsnap(a, d).is_orthogonal(1e-6);
  }
  std::vector<ElementCode> enumerate() const override {
    if (!is_finite)
      throw Error(ErrorCode::size_cap, "generated closure exceeds cap " + std::to_string(cap));
    std::vector<ElementCode> out = elements;
    std::sort(out.begin(), out.end());
    auto it = std::find(out.begin(), out.end(), identity());
    std::rotate(out.begin(), it, it + 1);
    return out;
  }
  std::optional<ElementCode> find(const Isometry& iso, double tol) const override {
    if (!iso.is_orthogonal(tol)) return std::nullopt;
    auto c = snap(iso);
    if (is_finite) {
      if (element_set.count(c)) return c;
      for (const auto& e : elements) {
        Isometry r = lookup(e);
        if ((r.linear - iso.linear).cwiseAbs().maxCoeff() <= tol &&
            (r.translation - iso.translation).cwiseAbs().maxCoeff() <= tol)
          return e;
      }
      return std::nullopt;
    }
    return remember(iso);
  }
  std::string show(const ElementCode& a) const override {
    Isometry iso = lookup(a);
    return "M" + fmt_matrix(iso.linear) + (iso.translation.isZero() ? "" : " + " + fmt_matrix(iso.translation.transpose()));
  }
};

template <class Impl>
std::shared_ptr<Impl> finish(std::shared_ptr<Impl> impl, std::string desc) {
  impl->desc = std::move(desc);
  impl->id = fnv1a(impl->desc);
  return impl;
}

void check_dim(int d) {
  if (d < 1 || d > 8) throw Error(ErrorCode::invalid_argument, "dimension must be in 1..8, got " + std::to_string(d));
}

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------
// SymmetryGroup

SymmetryGroup::SymmetryGroup() : SymmetryGroup(trivial(2)) {}

SymmetryGroup SymmetryGroup::trivial(int d) {
  detail::check_dim(d);
  return SymmetryGroup(detail::finish(std::make_shared<detail::TrivialImpl>(d), "trivial:d=" + std::to_string(d)));
}

SymmetryGroup SymmetryGroup::cyclic(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "cyclic order must be positive");
  auto impl = std::make_shared<detail::CyclicImpl>();
  impl->n = n;
  return SymmetryGroup(detail::finish(impl, "cyclic:n=" + std::to_string(n)));
}

SymmetryGroup SymmetryGroup::reflection() {
  auto impl = std::make_shared<detail::DihedralImpl>(GroupKind::reflection);
  impl->n = 1;
  return SymmetryGroup(detail::finish(impl, "reflection"));
}

SymmetryGroup SymmetryGroup::dihedral(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "dihedral rotation order must be positive");
  auto impl = std::make_shared<detail::DihedralImpl>(GroupKind::dihedral);
  impl->n = n;
  return SymmetryGroup(detail::finish(impl, "dihedral:n=" + std::to_string(n)));
}

SymmetryGroup SymmetryGroup::klein3d() {
  return SymmetryGroup(detail::finish(std::make_shared<detail::KleinImpl>(), "klein3d"));
}

SymmetryGroup SymmetryGroup::signed_permutation(int d) {
  detail::check_dim(d);
  auto impl = std::make_shared<detail::SignedPermImpl>(d);
  impl->n = d;
  return SymmetryGroup(detail::finish(impl, "signed_perm:d=" + std::to_string(d)));
}

SymmetryGroup SymmetryGroup::inversion(int d) {
  detail::check_dim(d);
  auto impl = std::make_shared<detail::InversionImpl>(d);
  impl->n = d;
  return SymmetryGroup(detail::finish(impl, "inversion:d=" + std::to_string(d)));
}

namespace {
void check_basis(const Eigen::MatrixXd& basis) {
  detail::check_dim(static_cast<int>(basis.cols()));
  if (basis.rows() > basis.cols()) throw Error(ErrorCode::invalid_argument, "more lattice generators than dimensions");
  if (basis.rows() > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    if (lu.rank() != basis.rows()) throw Error(ErrorCode::invalid_argument, "lattice generators are linearly dependent");
  }
}
}  // namespace

SymmetryGroup SymmetryGroup::translations(const Eigen::MatrixXd& basis) {
  check_basis(basis);
  auto impl = std::make_shared<detail::TranslationsImpl>();
  impl->basis = basis;
  return SymmetryGroup(detail::finish(impl, "translations:basis=" + fmt_matrix(basis)));
}

SymmetryGroup SymmetryGroup::trans_inv(const Eigen::MatrixXd& basis) {
  check_basis(basis);
  auto impl = std::make_shared<detail::TransPointImpl>(GroupKind::trans_inv, basis,
                                                       inversion(static_cast<int>(basis.cols())));
  return SymmetryGroup(detail::finish(impl, "trans_inv:basis=" + fmt_matrix(basis)));
}

SymmetryGroup SymmetryGroup::trans_point(const Eigen::MatrixXd& basis, const SymmetryGroup& point) {
  check_basis(basis);
  if (point.dimension() != basis.cols()) throw Error(ErrorCode::invalid_argument, "point group dimension mismatch");
  auto impl = std::make_shared<detail::TransPointImpl>(GroupKind::trans_point, basis, point);
  return SymmetryGroup(detail::finish(impl, "trans_point:basis=" + fmt_matrix(basis) + ";point=" + point.descriptor()));
}

SymmetryGroup SymmetryGroup::generated(const std::vector<Isometry>& generators, std::size_t cap) {
  if (generators.empty()) throw Error(ErrorCode::invalid_argument, "generated group needs at least one generator");
  int d = generators.front().dimension();
  detail::check_dim(d);
  std::string desc = "generated:cap=" + std::to_string(cap) + ";gens=";
  for (const auto& g : generators) {
    if (g.dimension() != d || g.translation.size() != d)
      throw Error(ErrorCode::invalid_argument, "generator dimension mismatch");
    if (!g.is_orthogonal(1e-9)) throw Error(ErrorCode::invalid_argument, "generator linear part is not orthogonal");
    for (auto v : detail::snap(g)) desc += std::to_string(v) + ",";
    desc += ";";
  }
  auto impl = std::make_shared<detail::GeneratedImpl>(generators, d, cap);
  return SymmetryGroup(detail::finish(impl, desc));
}

GroupKind SymmetryGroup::kind() const { return impl_->kind(); }
int SymmetryGroup::dimension() const { return impl_->dim(); }
bool SymmetryGroup::is_finite() const { return impl_->finite(); }
std::uint64_t SymmetryGroup::id() const { return impl_->id; }
std::string SymmetryGroup::descriptor() const { return impl_->desc; }
int SymmetryGroup::n() const { return impl_->n; }
const Eigen::MatrixXd& SymmetryGroup::basis() const { return impl_->basis; }
const SymmetryGroup& SymmetryGroup::point_group() const {
  if (!impl_->point) throw Error(ErrorCode::invalid_argument, "group has no point group");
  return *impl_->point;
}
const std::vector<Isometry>& SymmetryGroup::generating_isometries() const { return impl_->gens; }
std::size_t SymmetryGroup::cap() const { return impl_->cap; }

std::size_t SymmetryGroup::order() const {
  if (!is_finite()) throw Error(ErrorCode::unsupported_enumeration, "group " + descriptor() + " is infinite");
  switch (kind()) {
    case GroupKind::cyclic: return static_cast<std::size_t>(n());
    case GroupKind::dihedral:
    case GroupKind::reflection: return static_cast<std::size_t>(2 * n());
    case GroupKind::klein3d: return 4;
    case GroupKind::inversion: return 2;
    case GroupKind::trivial: return 1;
    default: return impl_->enumerate().size();
  }
}

void SymmetryGroup::check(const GroupElement& a) const {
  if (a.group_id() != id()) throw Error(ErrorCode::mixed_groups, "element does not belong to " + descriptor());
}

GroupElement SymmetryGroup::identity() const { return GroupElement(id(), impl_->identity()); }

GroupElement SymmetryGroup::compose(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  return GroupElement(id(), impl_->compose(a.code(), b.code()));
}

GroupElement SymmetryGroup::inverse(const GroupElement& a) const {
  check(a);
  return GroupElement(id(), impl_->inverse(a.code()));
}

GroupElement SymmetryGroup::power(const GroupElement& a, std::int64_t k) const {
  GroupElement base = k < 0 ? inverse(a) : a;
  GroupElement out = identity();
  for (std::int64_t i = 0; i < std::abs(k); ++i) out = compose(out, base);
  return out;
}

std::vector<GroupElement> SymmetryGroup::enumerate() const {
  std::vector<GroupElement> out;
  for (auto& c : impl_->enumerate()) out.emplace_back(id(), std::move(c));
  return out;
}

std::vector<GroupElement> SymmetryGroup::generators() const {
  std::vector<GroupElement> out;
  for (auto& c : impl_->generators()) out.emplace_back(id(), std::move(c));
  return out;
}

std::vector<GroupElement> SymmetryGroup::sample_elements(std::size_t count) const {
  std::vector<GroupElement> out{identity()};
  std::set<GroupElement> seen{identity()};
  std::vector<GroupElement> steps;
  for (const auto& g : generators()) {
    steps.push_back(g);
    steps.push_back(inverse(g));
  }
  std::size_t head = 0;
  while (out.size() < count && head < out.size()) {
    GroupElement cur = out[head++];
    for (const auto& s : steps) {
      auto nxt = compose(cur, s);
      if (seen.insert(nxt).second) {
        out.push_back(nxt);
        if (out.size() >= count) break;
      }
    }
  }
  return out;
}

Isometry SymmetryGroup::represent(const GroupElement& a) const {
  check(a);
  return impl_->represent(a.code());
}

Eigen::MatrixXd SymmetryGroup::linear_part(const GroupElement& a) const { return represent(a).linear; }

GroupElement SymmetryGroup::element(const ElementCode& code) const {
  if (!impl_->valid(code)) throw Error(ErrorCode::invalid_argument, "invalid element code for " + descriptor());
  return GroupElement(id(), code);
}

GroupElement SymmetryGroup::from_isometry(const Isometry& iso, double tol) const {
  if (iso.dimension() != dimension()) throw Error(ErrorCode::invalid_argument, "isometry dimension mismatch");
  auto c = impl_->find(iso, tol);
  if (!c) throw Error(ErrorCode::invalid_argument, "isometry is not an element of " + descriptor());
  return GroupElement(id(), *c);
}

std::string SymmetryGroup::to_string(const GroupElement& a) const {
  check(a);
  return impl_->show(a.code());
}

// ---------------------------------------------------------------------------

std::vector<RigidMotion> symmetric_motion_basis(const SymmetryGroup& group) {
  const int d = group.dimension();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  const int unknowns = static_cast<int>(pairs.size()) + d;
  auto motion = [&](const Eigen::VectorXd& z) {
    RigidMotion m{Eigen::MatrixXd::Zero(d, d), z.tail(d)};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      m.skew(pairs[p].first, pairs[p].second) = z(p);
      m.skew(pairs[p].second, pairs[p].first) = -z(p);
    }
    return m;
  };

  auto gens = group.generators();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(gens.size()) * (d * d + d), unknowns);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    Isometry iso = group.represent(gens[g]);
    for (int u = 0; u < unknowns; ++u) {
      Eigen::VectorXd z = Eigen::VectorXd::Unit(unknowns, u);
      RigidMotion m = motion(z);
      Eigen::MatrixXd c = m.skew * iso.linear - iso.linear * m.skew;
      Eigen::VectorXd t = m.skew * iso.translation + m.translation - iso.linear * m.translation;
      Eigen::Index row = static_cast<Eigen::Index>(g) * (d * d + d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(row + i * d + j, u) = c(i, j);
      for (int i = 0; i < d; ++i) a(row + d * d + i, u) = t(i);
    }
  }

  std::vector<RigidMotion> out;
  if (a.rows() == 0) {
    for (int u = 0; u < unknowns; ++u) out.push_back(motion(Eigen::VectorXd::Unit(unknowns, u)));
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double tol = 1e-8 * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > tol ? 1 : 0;
  for (int u = rank; u < unknowns; ++u) out.push_back(motion(svd.matrixV().col(u)));
  return out;
}

int trivial_flex_dimension(const SymmetryGroup& group) {
  return static_cast<int>(symmetric_motion_basis(group).size());
}

Isometry plane_rotation(int d, int k, double theta) {
  if (k < 1 || k >= d) throw Error(ErrorCode::invalid_argument, "axis index must satisfy 1 <= k < d");
  Isometry r = Isometry::identity(d);
  const int a = k - 1, z = d - 1;
  r.linear(z, z) = std::cos(theta);
  r.linear(a, z) = std::sin(theta);
  r.linear(a, a) = std::cos(theta);
  r.linear(z, a) = -std::sin(theta);
  return r;
}

Isometry last_axis_reflection(int d) {
  Isometry s = Isometry::identity(d);
  s.linear(d - 1, d - 1) = -1.0;
  return s;
}

Isometry near_reflection(int d, int k, double theta) {
  Isometry r = plane_rotation(d, k, std::numbers::pi - theta / 2.0);
  return r.inverse().then_after(last_axis_reflection(d)).then_after(r);
}

SymmetryGroup dense_surrogate(int d, const std::vector<double>& thetas) {
  if (static_cast<int>(thetas.size()) != d - 1)
    throw Error(ErrorCode::invalid_argument, "need one angle per axis pair");
  std::vector<Isometry> gens;
  for (int k = 1; k < d; ++k) {
    gens.push_back(plane_rotation(d, k, thetas[k - 1]));
    gens.push_back(near_reflection(d, k, thetas[k - 1]));
  }
  gens.push_back(last_axis_reflection(d));
  return SymmetryGroup::generated(gens, 256);
}

GroupElement approx_rotation(const SymmetryGroup& group, int k, double theta) {
  return group.from_isometry(plane_rotation(group.dimension(), k, theta));
}

GroupElement approx_reflection(const SymmetryGroup& group, int k, double theta) {
  return group.from_isometry(near_reflection(group.dimension(), k, theta));
}

}  // namespace symrigid
