#include "symrigid/gain_graph.hpp"

#include "symrigid/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

namespace symrigid {

// ---------------------------------------------------------------------------
// MultiGraph

MultiGraph::MultiGraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

EdgeId MultiGraph::add_edge(int tail, int head) {
  if (tail < 0 || head < 0 || tail >= n_ || head >= n_)
    throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
  edges_.push_back({tail, head});
  return static_cast<EdgeId>(edges_.size() - 1);
}

MultiGraph MultiGraph::without_edges(const std::vector<EdgeId>& removed) const {
  std::vector<bool> drop(edges_.size(), false);
  for (auto e : removed) drop.at(e) = true;
  MultiGraph g(n_);
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (!drop[e]) g.edges_.push_back(edges_[e]);
  return g;
}

MultiGraph MultiGraph::without_vertex(int v) const {
  MultiGraph g(n_ - 1);
  for (const auto& e : edges_) {
    if (e.tail == v || e.head == v) continue;
    g.edges_.push_back({e.tail > v ? e.tail - 1 : e.tail, e.head > v ? e.head - 1 : e.head});
  }
  return g;
}

int MultiGraph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges_) d += (e.tail == v) + (e.head == v);
  return d;
}

int MultiGraph::loop_count(int v) const {
  int c = 0;
  for (const auto& e : edges_) c += e.tail == v && e.head == v;
  return c;
}

std::vector<EdgeId> MultiGraph::incident(int v) const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].tail == v || edges_[e].head == v) out.push_back(static_cast<EdgeId>(e));
  return out;
}

std::vector<EdgeId> MultiGraph::between(int u, int v) const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& x = edges_[e];
    if ((x.tail == u && x.head == v) || (x.tail == v && x.head == u)) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

int MultiGraph::max_bundle() const {
  std::map<std::pair<int, int>, int> count;
  int best = 0;
  for (const auto& e : edges_) {
    if (e.is_loop()) continue;
    best = std::max(best, ++count[{std::min(e.tail, e.head), std::max(e.tail, e.head)}]);
  }
  return best;
}

int MultiGraph::induced_edge_count(std::uint64_t mask) const {
  int c = 0;
  for (const auto& e : edges_) c += ((mask >> e.tail) & 1U) && ((mask >> e.head) & 1U);
  return c;
}

std::vector<std::vector<int>> MultiGraph::components() const {
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : edges_) parent[find(e.tail)] = find(e.head);
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n_; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, vs] : groups) out.push_back(std::move(vs));
  std::sort(out.begin(), out.end());
  return out;
}

bool isomorphic(const MultiGraph& a, const MultiGraph& b) {
  const int n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto mult = [n](const MultiGraph& g) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& e : g.edges()) {
      ++m[e.tail][e.head];
      if (!e.is_loop()) ++m[e.head][e.tail];
    }
    return m;
  };
  auto ma = mult(a), mb = mult(b);
  std::vector<int> da(n), db(n);
  for (int v = 0; v < n; ++v) {
    da[v] = a.degree(v);
    db[v] = b.degree(v);
  }
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> go = [&](int v) {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || da[v] != db[w] || ma[v][v] != mb[w][w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = ma[v][u] == mb[w][map[u]];
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (go(v + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  return go(0);
}

// ---------------------------------------------------------------------------
// GainGraph

GroupElement GainGraph::gain(EdgeId e, int from) const {
  const Edge& x = graph.edge(e);
  if (from == x.tail) return gains.at(e);
  if (from != x.head) throw Error(ErrorCode::invalid_argument, "vertex is not an endpoint of the edge");
  return group.inverse(gains.at(e));
}

EdgeId GainGraph::add_edge(int tail, int head, const GroupElement& g) {
  EdgeId e = graph.add_edge(tail, head);
  gains.push_back(g);
  return e;
}

std::vector<Violation> validate(const GainGraph& gg) {
  std::vector<Violation> out;
  const auto& g = gg.graph;
  if (static_cast<int>(gg.gains.size()) != g.edge_count()) {
    out.push_back({0, {}, "gain count does not match edge count"});
    return out;
  }
  bool malformed = false;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!gg.group.contains(gg.gains[e])) {
      out.push_back({0, {e}, "gain of edge " + std::to_string(e) + " is not an element of the group"});
      malformed = true;
    }
  }
  if (malformed) return out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).is_loop() && gg.group.is_identity(gg.gains[e]))
      out.push_back({3, {e}, "loop " + std::to_string(e) + " has identity gain (condition iii)"});
  }
  std::map<std::pair<int, int>, std::vector<EdgeId>> bundles;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& x = g.edge(e);
    bundles[{std::min(x.tail, x.head), std::max(x.tail, x.head)}].push_back(e);
  }
  for (const auto& [key, es] : bundles) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        if (gg.gain(es[i], key.first) == gg.gain(es[j], key.first)) {
          out.push_back({2,
                         {es[i], es[j]},
                         "parallel edges " + std::to_string(es[i]) + " and " + std::to_string(es[j]) +
                             " carry equal gains (condition ii)"});
        }
      }
    }
  }
  return out;
}

void require_valid(const GainGraph& gg) {
  auto v = validate(gg);
  if (!v.empty()) throw Error(ErrorCode::validation, v.front().message);
}

GainGraph switch_at(const GainGraph& gg, int v, const GroupElement& g) {
  GainGraph out = gg;
  const auto& grp = gg.group;
  GroupElement gi = grp.inverse(g);
  for (EdgeId e = 0; e < gg.graph.edge_count(); ++e) {
    const auto& x = gg.graph.edge(e);
    if (x.tail == v && x.head == v) {
      out.gains[e] = grp.compose(grp.compose(g, gg.gains[e]), gi);
    } else if (x.tail == v) {
      out.gains[e] = grp.compose(g, gg.gains[e]);
    } else if (x.head == v) {
      out.gains[e] = grp.compose(gg.gains[e], gi);
    }
  }
  return out;
}

namespace {

// Potentials along a BFS forest of the subgraph on `edges`: pot(w) = pot(u) * phi(e, u, w).
struct Forest {
  std::vector<std::optional<GroupElement>> pot;
  std::vector<bool> tree_edge;
};

Forest bfs_forest(const GainGraph& gg, const std::vector<bool>& vertex_in, const std::vector<bool>& edge_in) {
  const auto& g = gg.graph;
  Forest f{std::vector<std::optional<GroupElement>>(g.vertex_count()), std::vector<bool>(g.edge_count(), false)};
  std::vector<std::vector<EdgeId>> adj(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!edge_in[e]) continue;
    const auto& x = g.edge(e);
    adj[x.tail].push_back(e);
    if (!x.is_loop()) adj[x.head].push_back(e);
  }
  for (int r = 0; r < g.vertex_count(); ++r) {
    if (!vertex_in[r] || f.pot[r]) continue;
    f.pot[r] = gg.group.identity();
    std::queue<int> q;
    q.push(r);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (EdgeId e : adj[u]) {
        int w = g.edge(e).other(u);
        if (f.pot[w]) continue;
        f.pot[w] = gg.group.compose(*f.pot[u], gg.gain(e, u));
        f.tree_edge[e] = true;
        q.push(w);
      }
    }
  }
  return f;
}

bool forest_balanced(const GainGraph& gg, const std::vector<bool>& vertex_in, const std::vector<bool>& edge_in) {
  Forest f = bfs_forest(gg, vertex_in, edge_in);
  for (EdgeId e = 0; e < gg.graph.edge_count(); ++e) {
    if (!edge_in[e] || f.tree_edge[e]) continue;
    const auto& x = gg.graph.edge(e);
    if (gg.group.compose(*f.pot[x.tail], gg.gains[e]) != *f.pot[x.head]) return false;
  }
  return true;
}

}  // namespace

GainGraph switch_to_forest(const GainGraph& gg) {
  std::vector<bool> all_v(gg.graph.vertex_count(), true), all_e(gg.graph.edge_count(), true);
  Forest f = bfs_forest(gg, all_v, all_e);
  GainGraph out = gg;
  // Relabel fiber v by pot(v)^-1 on the left: gains become pot(tail) phi pot(head)^-1.
  for (EdgeId e = 0; e < gg.graph.edge_count(); ++e) {
    const auto& x = gg.graph.edge(e);
    out.gains[e] = gg.group.compose(gg.group.compose(*f.pot[x.tail], gg.gains[e]), gg.group.inverse(*f.pot[x.head]));
  }
  return out;
}

bool is_balanced(const GainGraph& gg, const std::vector<int>& vertices) {
  std::vector<bool> vin(gg.graph.vertex_count(), false);
  for (int v : vertices) vin.at(v) = true;
  std::vector<bool> ein(gg.graph.edge_count(), false);
  for (EdgeId e = 0; e < gg.graph.edge_count(); ++e) ein[e] = vin[gg.graph.edge(e).tail] && vin[gg.graph.edge(e).head];
  return forest_balanced(gg, vin, ein);
}

bool is_balanced(const GainGraph& gg) {
  std::vector<int> all(gg.graph.vertex_count());
  std::iota(all.begin(), all.end(), 0);
  return is_balanced(gg, all);
}

bool edges_balanced(const GainGraph& gg, const std::vector<EdgeId>& edges) {
  std::vector<bool> vin(gg.graph.vertex_count(), false), ein(gg.graph.edge_count(), false);
  for (EdgeId e : edges) {
    ein.at(e) = true;
    vin[gg.graph.edge(e).tail] = vin[gg.graph.edge(e).head] = true;
  }
  return forest_balanced(gg, vin, ein);
}

CoveringGraph covering_graph(const GainGraph& gg) {
  if (!gg.group.is_finite())
    throw Error(ErrorCode::unsupported_enumeration, "covering graph needs a finite group");
  CoveringGraph c;
  c.elements = gg.group.enumerate();
  const int order = static_cast<int>(c.elements.size());
  std::unordered_map<GroupElement, int, GroupElementHash> index;
  for (int i = 0; i < order; ++i) index[c.elements[i]] = i;
  for (int v = 0; v < gg.graph.vertex_count(); ++v)
    for (const auto& g : c.elements) c.vertices.push_back({v, g});
  for (EdgeId e = 0; e < gg.graph.edge_count(); ++e) {
    const auto& x = gg.graph.edge(e);
    for (int i = 0; i < order; ++i) {
      int j = index.at(gg.group.compose(c.elements[i], gg.gains[e]));
      c.edges.emplace_back(x.tail * order + i, x.head * order + j);
      c.base_edge.push_back(e);
    }
  }
  return c;
}

Placement lift_placement(const GainGraph& gg, const Placement& p) {
  if (!gg.group.is_finite())
    throw Error(ErrorCode::unsupported_enumeration, "lifting needs a finite group");
  if (p.rows() != gg.graph.vertex_count() || p.cols() != gg.dimension())
    throw Error(ErrorCode::invalid_argument, "placement shape mismatch");
  auto elements = gg.group.enumerate();
  const auto order = static_cast<Eigen::Index>(elements.size());
  Placement out(p.rows() * order, p.cols());
  for (Eigen::Index v = 0; v < p.rows(); ++v)
    for (Eigen::Index i = 0; i < order; ++i)
      out.row(v * order + i) = gg.group.represent(elements[i]).apply(p.row(v).transpose()).transpose();
  return out;
}

// ---------------------------------------------------------------------------
// GainMapSpace

GainMapSpace::GainMapSpace(MultiGraph graph, SymmetryGroup group) : graph_(std::move(graph)), group_(std::move(group)) {
  elements_ = group_.enumerate();
  const int order = static_cast<int>(elements_.size());
  std::unordered_map<GroupElement, int, GroupElementHash> index;
  for (int i = 0; i < order; ++i) index[elements_[i]] = i;
  for (const auto& g : elements_) inverse_.push_back(index.at(group_.inverse(g)));

  std::map<std::pair<int, int>, int> bundle_of;
  const int m = graph_.edge_count();
  bundle_.resize(m);
  position_.resize(m);
  reversed_.resize(m);
  radix_.resize(m);
  count_ = 1;
  for (EdgeId e = 0; e < m; ++e) {
    const auto& x = graph_.edge(e);
    std::pair<int, int> key{std::min(x.tail, x.head), std::max(x.tail, x.head)};
    auto [it, fresh] = bundle_of.emplace(key, static_cast<int>(bundles_.size()));
    if (fresh) bundles_.emplace_back();
    bundle_[e] = it->second;
    position_[e] = static_cast<int>(bundles_[it->second].size());
    bundles_[it->second].push_back(e);
    reversed_[e] = x.tail > x.head;
    radix_[e] = order - position_[e] - (x.is_loop() ? 1 : 0);
    count_ *= std::max(radix_[e], 0);
  }
}

std::uint64_t GainMapSpace::count_u64() const {
  if (!fits_u64()) throw Error(ErrorCode::resource_cap, "gain-map count exceeds 64 bits");
  return count_.convert_to<std::uint64_t>();
}

void GainMapSpace::decode(std::uint64_t index, std::vector<int>& out) const {
  std::vector<int> digits(radix_.size());
  for (std::size_t i = radix_.size(); i-- > 0;) {
    auto r = static_cast<std::uint64_t>(radix_[i]);
    digits[i] = static_cast<int>(index % r);
    index /= r;
  }
  digits_to_gains(digits, out);
}

void GainMapSpace::digits_to_gains(const std::vector<int>& digits, std::vector<int>& out) const {
  const int m = graph_.edge_count();
  const int order = static_cast<int>(elements_.size());
  out.assign(m, 0);
  std::vector<int> value(m, 0);  // bundle-orientation value
  for (EdgeId e = 0; e < m; ++e) {
    const auto& members = bundles_[bundle_[e]];
    const bool loop = graph_.edge(e).is_loop();
    int skip = digits[e];
    for (int g = 0; g < order; ++g) {
      if (loop && g == 0) continue;
      bool taken = false;
      for (int p = 0; p < position_[e]; ++p) taken = taken || value[members[p]] == g;
      if (taken) continue;
      if (skip-- == 0) {
        value[e] = g;
        break;
      }
    }
    out[e] = reversed_[e] ? inverse_[value[e]] : value[e];
  }
}

GainGraph GainMapSpace::gain_graph(const std::vector<int>& element_indices) const {
  GainGraph gg(graph_, group_, {});
  for (int i : element_indices) gg.gains.push_back(elements_[i]);
  return gg;
}

GainGraph GainMapSpace::at(std::uint64_t index) const {
  std::vector<int> idx;
  decode(index, idx);
  return gain_graph(idx);
}

BigInt count_gain_maps(const MultiGraph& graph, const SymmetryGroup& group) {
  return GainMapSpace(graph, group).count();
}

}  // namespace symrigid
