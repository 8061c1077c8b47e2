#include "symrigid/rigidity.hpp"

#include "symrigid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace symrigid {

namespace {

constexpr int kCoordRange = 1000;
constexpr long kAffineSubsetCap = 50000;
constexpr long kOrbitPointCap = 5000;
constexpr int kQrThreshold = 64;

void check_shape(const GainGraph& gg, const Placement& p) {
  if (p.rows() != gg.graph.vertex_count() || p.cols() != gg.dimension())
    throw Error(ErrorCode::invalid_argument, "placement shape does not match the gain graph");
  if (!p.allFinite()) throw Error(ErrorCode::invalid_argument, "placement has non-finite coordinates");
}

long binomial_capped(long n, long k, long cap) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

bool affinely_dependent(const Placement& p, const std::vector<int>& idx) {
  const int d = static_cast<int>(p.cols());
  Eigen::MatrixXd diff(static_cast<Eigen::Index>(idx.size()) - 1, d);
  for (std::size_t i = 1; i < idx.size(); ++i) diff.row(static_cast<Eigen::Index>(i) - 1) = p.row(idx[i]) - p.row(idx[0]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(diff);
  lu.setThreshold(1e-9);
  return lu.rank() < diff.rows();
}

// Rank used inside batch evaluation; large matrices go through column-pivoted QR.
int batch_rank(const Eigen::MatrixXd& m) {
  if (std::min(m.rows(), m.cols()) > kQrThreshold) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(static_cast<double>(std::max(m.rows(), m.cols())) * std::numeric_limits<double>::epsilon() * 16);
    return static_cast<int>(qr.rank());
  }
  return numerical_rank(m);
}

}  // namespace

Eigen::MatrixXd orbit_rigidity_matrix(const GainGraph& gg, const Placement& p) {
  check_shape(gg, p);
  const int d = gg.dimension();
  const auto& g = gg.graph;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.edge_count(), static_cast<Eigen::Index>(d) * g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& x = g.edge(e);
    Isometry gamma = gg.group.represent(gg.gains[e]);
    Eigen::VectorXd pv = p.row(x.tail).transpose();
    Eigen::VectorXd pw = p.row(x.head).transpose();
    if (x.is_loop()) {
      Eigen::VectorXd row = 2 * pv - gamma.apply(pv) - gamma.inverse().apply(pv);
      m.block(e, static_cast<Eigen::Index>(d) * x.tail, 1, d) = row.transpose();
    } else {
      m.block(e, static_cast<Eigen::Index>(d) * x.tail, 1, d) = (pv - gamma.apply(pw)).transpose();
      m.block(e, static_cast<Eigen::Index>(d) * x.head, 1, d) = (pw - gamma.inverse().apply(pv)).transpose();
    }
  }
  return m;
}

Eigen::MatrixXd trivial_flex_basis(const SymmetryGroup& group, const Placement& p) {
  const int d = group.dimension();
  if (p.cols() != d) throw Error(ErrorCode::invalid_argument, "placement dimension mismatch");
  auto motions = symmetric_motion_basis(group);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(d) * p.rows(), static_cast<Eigen::Index>(motions.size()));
  for (std::size_t c = 0; c < motions.size(); ++c)
    for (Eigen::Index v = 0; v < p.rows(); ++v)
      out.block(d * v, static_cast<Eigen::Index>(c), d, 1) =
          motions[c].skew * p.row(v).transpose() + motions[c].translation;
  return out;
}

int trivial_flex_dim_at(const SymmetryGroup& group, const Placement& p) {
  auto basis = trivial_flex_basis(group, p);
  if (basis.cols() == 0 || basis.rows() == 0) return 0;
  return numerical_rank(basis, 1e-8 * std::max(1.0, basis.cwiseAbs().maxCoeff()));
}

double default_tolerance(const Eigen::MatrixXd& m, double sigma_max) {
  return static_cast<double>(std::max(m.rows(), m.cols())) * std::numeric_limits<double>::epsilon() * sigma_max;
}

int numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  double threshold = tol >= 0 ? tol : default_tolerance(m, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > threshold;
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL)); }

bool placement_degenerate(const Placement& p, const SymmetryGroup& group) {
  const int n = static_cast<int>(p.rows()), d = static_cast<int>(p.cols());
  if (n >= 2) {
    if (n <= d + 1) {
      std::vector<int> all(n);
      for (int i = 0; i < n; ++i) all[i] = i;
      if (affinely_dependent(p, all)) return true;
    } else if (binomial_capped(n, d + 1, kAffineSubsetCap) <= kAffineSubsetCap) {
      std::vector<int> idx(d + 1);
      for (int i = 0; i <= d; ++i) idx[i] = i;
      while (true) {
        if (affinely_dependent(p, idx)) return true;
        int i = d;
        while (i >= 0 && idx[i] == n - d - 1 + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j <= d; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  if (group.is_finite() && static_cast<long>(group.order()) * n <= kOrbitPointCap) {
    std::set<std::vector<long long>> seen;
    for (const auto& g : group.enumerate()) {
      Isometry iso = group.represent(g);
      for (int v = 0; v < n; ++v) {
        Eigen::VectorXd q = iso.apply(p.row(v).transpose());
        std::vector<long long> key(d);
        for (int j = 0; j < d; ++j) key[j] = std::llround(q(j) * 1e6);
        if (!seen.insert(key).second) return true;
      }
    }
  }
  return false;
}

Placement random_placement(int n, const SymmetryGroup& group, std::mt19937_64& rng) {
  const int d = group.dimension();
  std::uniform_int_distribution<int> coord(-kCoordRange, kCoordRange);
  Placement p(n, d);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (int v = 0; v < n; ++v)
      for (int j = 0; j < d; ++j) p(v, j) = coord(rng);
    if (!placement_degenerate(p, group)) return p;
  }
  throw Error(ErrorCode::internal, "could not draw a non-degenerate placement");
}

RankReport rank_at(const GainGraph& gg, const Placement& p) {
  RankReport r;
  Eigen::MatrixXd m = orbit_rigidity_matrix(gg, p);
  const int cols = gg.dimension() * gg.graph.vertex_count();
  if (m.size() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    r.tolerance = s.size() ? default_tolerance(m, s(0)) : 0.0;
    r.rank = static_cast<int>((s.array() > r.tolerance).count());
  }
  r.nullity = cols - r.rank;
  r.trivial_dim = trivial_flex_dim_at(gg.group, p);
  r.rigid = r.nullity == r.trivial_dim;
  r.trials = 1;
  return r;
}

RankReport is_symmetrically_rigid(const GainGraph& gg, int trials, std::uint64_t seed) {
  if (gg.graph.vertex_count() < 1) throw Error(ErrorCode::invalid_argument, "rigidity needs at least one vertex");
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be positive");
  std::mt19937_64 rng(splitmix64(seed));
  RankReport best;
  bool have = false;
  for (int t = 0; t < trials; ++t) {
    Placement p = random_placement(gg.graph.vertex_count(), gg.group, rng);
    RankReport r = rank_at(gg, p);
    if (!have || r.rank > best.rank || (r.rank == best.rank && r.trivial_dim < best.trivial_dim)) best = r;
    have = true;
  }
  best.trials = trials;
  best.seed = seed;
  return best;
}

RankReport rigidity_consensus(const GainGraph& gg, int trials, std::uint64_t seed, int seeds) {
  RankReport best;
  bool any_rigid = false, any_flexible = false;
  for (int s = 0; s < seeds; ++s) {
    RankReport r = is_symmetrically_rigid(gg, trials, s == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(s)));
    (r.rigid ? any_rigid : any_flexible) = true;
    if (s == 0 || r.rank > best.rank) best = r;
  }
  best.trials = trials * seeds;
  best.seed = seed;
  best.flagged = any_rigid && any_flexible;
  return best;
}

Eigen::MatrixXd covering_rigidity_matrix(const GainGraph& gg, const Placement& p) {
  check_shape(gg, p);
  CoveringGraph cover = covering_graph(gg);
  Placement lifted = lift_placement(gg, p);
  const int d = gg.dimension();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cover.edges.size()), static_cast<Eigen::Index>(d) * lifted.rows());
  for (std::size_t i = 0; i < cover.edges.size(); ++i) {
    auto [a, b] = cover.edges[i];
    Eigen::RowVectorXd diff = lifted.row(a) - lifted.row(b);
    auto row = static_cast<Eigen::Index>(i);
    m.block(row, static_cast<Eigen::Index>(d) * a, 1, d) += diff;
    m.block(row, static_cast<Eigen::Index>(d) * b, 1, d) -= diff;
  }
  return m;
}

int symmetric_kernel_dim(const GainGraph& gg, const Placement& p) {
  Eigen::MatrixXd r = covering_rigidity_matrix(gg, p);
  const int d = gg.dimension(), n = gg.graph.vertex_count();
  auto elements = gg.group.enumerate();
  const auto order = static_cast<Eigen::Index>(elements.size());
  // u(v, g) = g_linear u(v, 1)
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d) * n * order, static_cast<Eigen::Index>(d) * n);
  for (Eigen::Index i = 0; i < order; ++i) {
    Eigen::MatrixXd lin = gg.group.linear_part(elements[i]);
    for (Eigen::Index v = 0; v < n; ++v) s.block(d * (v * order + i), d * v, d, d) = lin;
  }
  if (r.rows() == 0) return d * n;
  return d * n - numerical_rank(r * s);
}

OrbitEvaluator::OrbitEvaluator(MultiGraph graph, SymmetryGroup group, std::vector<GroupElement> elements,
                               std::vector<int> inverse_index, std::vector<Placement> placements)
    : graph_(std::move(graph)), group_(std::move(group)), elements_(std::move(elements)), inverse_(std::move(inverse_index)) {
  for (const auto& p : placements) add_placement(p);
}

void OrbitEvaluator::add_placement(const Placement& p) {
  const int d = group_.dimension();
  if (p.rows() != graph_.vertex_count() || p.cols() != d) throw Error(ErrorCode::invalid_argument, "placement shape mismatch");
  std::vector<Eigen::MatrixXd> imgs;
  imgs.reserve(elements_.size());
  for (const auto& g : elements_) {
    Isometry iso = group_.represent(g);
    Eigen::MatrixXd img = iso.linear * p.transpose();
    img.colwise() += iso.translation;
    imgs.push_back(std::move(img));
  }
  placements_.push_back(p);
  images_.push_back(std::move(imgs));
  expected_.push_back(d * graph_.vertex_count() - trivial_flex_dim_at(group_, p));
}

int OrbitEvaluator::rank(const std::vector<int>& gains, int placement) const {
  const int d = group_.dimension();
  const auto& img = images_[placement];
  const auto& p = placements_[placement];
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(graph_.edge_count(), static_cast<Eigen::Index>(d) * graph_.vertex_count());
  for (EdgeId e = 0; e < graph_.edge_count(); ++e) {
    const auto& x = graph_.edge(e);
    const auto& fwd = img[gains[e]];
    const auto& back = img[inverse_[gains[e]]];
    for (int j = 0; j < d; ++j) {
      if (x.is_loop()) {
        m(e, d * x.tail + j) = 2 * p(x.tail, j) - fwd(j, x.tail) - back(j, x.tail);
      } else {
        m(e, d * x.tail + j) = p(x.tail, j) - fwd(j, x.head);
        m(e, d * x.head + j) = p(x.head, j) - back(j, x.tail);
      }
    }
  }
  return batch_rank(m);
}

}  // namespace symrigid
