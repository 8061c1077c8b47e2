#include "symrigid/sparsity.hpp"

#include "symrigid/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace symrigid {

namespace {

constexpr int kExhaustiveCap = 14;
constexpr int kGainCap = 12;
constexpr long kPathCap = 200000;

bool has_loop(const MultiGraph& g) {
  return std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.is_loop(); });
}

bool pebble_applies(const MultiGraph& g, int k, int l) {
  return k >= 1 && l >= 0 && l < 2 * k && (l <= k || !has_loop(g));
}

}  // namespace

// ---------------------------------------------------------------------------
// Pebble game

PebbleGame::PebbleGame(int n, int k, int l) : n_(n), k_(k), l_(l), pebbles_(n, k), out_(n) {
  if (k < 1 || l < 0 || l >= 2 * k) throw Error(ErrorCode::invalid_argument, "pebble game needs 0 <= l < 2k");
}

bool PebbleGame::fetch(int target, int blocked) {
  std::vector<int> parent(n_, -2);
  parent[target] = -1;
  if (blocked >= 0) parent[blocked] = -1;
  std::vector<int> stack{target};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : out_[u]) {
      if (parent[w] != -2) continue;
      parent[w] = u;
      if (pebbles_[w] > 0) {
        // Reverse the path target -> ... -> w.
        --pebbles_[w];
        ++pebbles_[target];
        int cur = w;
        while (cur != target) {
          int p = parent[cur];
          auto it = std::find(out_[p].begin(), out_[p].end(), cur);
          out_[p].erase(it);
          out_[cur].push_back(p);
          cur = p;
        }
        return true;
      }
      stack.push_back(w);
    }
  }
  return false;
}

bool PebbleGame::gather(int u, int v) {
  auto have = [&] { return u == v ? pebbles_[u] : pebbles_[u] + pebbles_[v]; };
  while (have() < l_ + 1) {
    if (fetch(u, u == v ? -1 : v)) continue;
    if (u != v && fetch(v, u)) continue;
    return false;
  }
  return true;
}

bool PebbleGame::try_add(int u, int v) {
  if (u == v && l_ + 1 > k_) return false;
  if (!gather(u, v)) return false;
  int from = pebbles_[u] > 0 ? u : v;
  int to = from == u ? v : u;
  --pebbles_[from];
  out_[from].push_back(to);
  ++accepted_;
  return true;
}

// ---------------------------------------------------------------------------
// Count sparsity

bool is_sparse_pebble(const MultiGraph& g, int k, int l) {
  if (!pebble_applies(g, k, l)) throw Error(ErrorCode::invalid_argument, "pebble game does not apply to these counts");
  PebbleGame game(g.vertex_count(), k, l);
  for (const auto& e : g.edges())
    if (!game.try_add(e.tail, e.head)) return false;
  return true;
}

bool is_sparse_exhaustive(const MultiGraph& g, int k, int l) {
  const int n = g.vertex_count();
  if (n > kExhaustiveCap)
    throw Error(ErrorCode::size_cap, "exhaustive sparsity check limited to " + std::to_string(kExhaustiveCap) + " vertices");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    int size = std::popcount(mask);
    int bound = k * size - l;
    if (bound < 0) continue;
    if (g.induced_edge_count(mask) > bound) return false;
  }
  return true;
}

bool is_sparse(const MultiGraph& g, int k, int l) {
  if (pebble_applies(g, k, l)) return is_sparse_pebble(g, k, l);
  return is_sparse_exhaustive(g, k, l);
}

bool is_tight(const MultiGraph& g, int k, int l) {
  return g.edge_count() == k * g.vertex_count() - l && is_sparse(g, k, l);
}

// ---------------------------------------------------------------------------
// Gain sparsity

namespace {

// Does some balanced edge set spanning X (connected) have more than `bound` edges?
// Potentials are searched over products along simple paths from the root, which contain the
// potential of every connected balanced subgraph spanning X.
bool balanced_excess(const GainGraph& gg, std::uint64_t mask, int bound) {
  const auto& g = gg.graph;
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& x = g.edge(e);
    if (!x.is_loop() && ((mask >> x.tail) & 1U) && ((mask >> x.head) & 1U)) edges.push_back(e);
  }
  if (static_cast<int>(edges.size()) <= bound) return false;

  const int n = g.vertex_count();
  std::vector<std::vector<EdgeId>> adj(n);
  for (EdgeId e : edges) {
    adj[g.edge(e).tail].push_back(e);
    adj[g.edge(e).head].push_back(e);
  }
  const int root = std::countr_zero(mask);
  std::vector<int> order{root};
  std::vector<int> pos(n, -1);
  pos[root] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (EdgeId e : adj[order[i]]) {
      int w = g.edge(e).other(order[i]);
      if (pos[w] < 0) {
        pos[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  if (static_cast<int>(order.size()) != std::popcount(mask)) return false;  // disconnected

  std::vector<std::vector<GroupElement>> cand(n);
  std::vector<std::set<GroupElement>> seen(n);
  std::vector<bool> on_path(n, false);
  long visits = 0;
  std::function<void(int, const GroupElement&)> walk = [&](int v, const GroupElement& prod) {
    if (++visits > kPathCap) throw Error(ErrorCode::size_cap, "too many simple paths in gain-sparsity check");
    if (seen[v].insert(prod).second) cand[v].push_back(prod);
    on_path[v] = true;
    for (EdgeId e : adj[v]) {
      int w = g.edge(e).other(v);
      if (!on_path[w]) walk(w, gg.group.compose(prod, gg.gain(e, v)));
    }
    on_path[v] = false;
  };
  walk(root, gg.group.identity());
  cand[root] = {gg.group.identity()};

  // For edge e (tail a, head b): table[e][i] = index j with cand[a][i] * phi(e) = cand[b][j], or -1.
  struct Link {
    int early, late;                 // positions in `order`
    std::vector<int> forward;        // indexed by candidate of the early vertex
    bool early_is_tail;
  };
  std::vector<std::vector<Link>> links(order.size());
  std::vector<int> remaining(order.size() + 1, 0);
  for (EdgeId e : edges) {
    const auto& x = g.edge(e);
    int pa = pos[x.tail], pb = pos[x.head];
    Link link{std::min(pa, pb), std::max(pa, pb), {}, pa < pb};
    int early = order[link.early], late = order[link.late];
    std::map<GroupElement, int> index;
    for (std::size_t j = 0; j < cand[late].size(); ++j) index[cand[late][j]] = static_cast<int>(j);
    for (const auto& c : cand[early]) {
      auto target = gg.group.compose(c, gg.gain(e, early));
      auto it = index.find(target);
      link.forward.push_back(it == index.end() ? -1 : it->second);
    }
    ++remaining[link.late];
    links[link.late].push_back(std::move(link));
  }
  for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) remaining[i] += remaining[i + 1];

  std::vector<int> choice(order.size(), 0);
  std::function<bool(std::size_t, int)> search = [&](std::size_t i, int count) {
    if (count > bound) return true;
    if (i == order.size()) return false;
    if (count + remaining[i] <= bound) return false;
    for (std::size_t c = 0; c < cand[order[i]].size(); ++c) {
      choice[i] = static_cast<int>(c);
      int add = 0;
      for (const auto& link : links[i]) add += link.forward[choice[link.early]] == choice[i];
      if (search(i + 1, count + add)) return true;
    }
    return false;
  };
  return search(1, 0);
}

bool gain_sparse_masked(const GainGraph& gg, int k, int l, int m, std::uint64_t must) {
  const int n = gg.graph.vertex_count();
  if (n > kGainCap)
    throw Error(ErrorCode::size_cap, "gain-sparsity check limited to " + std::to_string(kGainCap) + " vertices");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if ((mask & must) != must) continue;
    int size = std::popcount(mask);
    int count = gg.graph.induced_edge_count(mask);
    if (k * size - m >= 0 && count > k * size - m) return false;
    if (k * size - l >= 0 && balanced_excess(gg, mask, k * size - l)) return false;
  }
  return true;
}

}  // namespace

bool is_gain_sparse(const GainGraph& gg, int k, int l, int m) {
  if (l < m) throw Error(ErrorCode::invalid_argument, "gain sparsity needs l >= m");
  return gain_sparse_masked(gg, k, l, m, 0);
}

bool is_gain_tight(const GainGraph& gg, int k, int l, int m) {
  return gg.graph.edge_count() == k * gg.graph.vertex_count() - m && is_gain_sparse(gg, k, l, m);
}

// ---------------------------------------------------------------------------
// Subgraphs

MultiGraph edge_subgraph(const MultiGraph& g, const std::vector<EdgeId>& edges) {
  MultiGraph out(g.vertex_count());
  for (EdgeId e : edges) out.add_edge(g.edge(e).tail, g.edge(e).head);
  return out;
}

GainGraph edge_subgraph(const GainGraph& gg, const std::vector<EdgeId>& edges) {
  GainGraph out(MultiGraph(gg.graph.vertex_count()), gg.group, {});
  for (EdgeId e : edges) out.add_edge(gg.graph.edge(e).tail, gg.graph.edge(e).head, gg.gains.at(e));
  return out;
}

std::optional<std::vector<EdgeId>> find_spanning_tight_subgraph(const MultiGraph& g, int k, int l) {
  std::vector<EdgeId> chosen;
  if (pebble_applies(g, k, l)) {
    PebbleGame game(g.vertex_count(), k, l);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (game.try_add(g.edge(e).tail, g.edge(e).head)) chosen.push_back(e);
  } else {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      chosen.push_back(e);
      if (!is_sparse_exhaustive(edge_subgraph(g, chosen), k, l)) chosen.pop_back();
    }
  }
  if (static_cast<int>(chosen.size()) != k * g.vertex_count() - l) return std::nullopt;
  return chosen;
}

std::optional<std::vector<EdgeId>> find_spanning_gain_tight_subgraph(const GainGraph& gg, int k, int l, int m) {
  std::vector<EdgeId> chosen;
  for (EdgeId e = 0; e < gg.graph.edge_count(); ++e) {
    chosen.push_back(e);
    const auto& x = gg.graph.edge(e);
    std::uint64_t must = (std::uint64_t{1} << x.tail) | (std::uint64_t{1} << x.head);
    if (!gain_sparse_masked(edge_subgraph(gg, chosen), k, l, m, must)) chosen.pop_back();
  }
  if (static_cast<int>(chosen.size()) != k * gg.graph.vertex_count() - m) return std::nullopt;
  return chosen;
}

bool unique_cycle_check(const MultiGraph& g) {
  auto comps = g.components();
  std::vector<int> comp_of(g.vertex_count());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  std::vector<int> edges(comps.size(), 0);
  for (const auto& e : g.edges()) ++edges[comp_of[e.tail]];
  for (std::size_t c = 0; c < comps.size(); ++c)
    if (edges[c] != static_cast<int>(comps[c].size())) return false;
  return true;
}

bool is_forest(const MultiGraph& g) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : g.edges()) {
    int a = find(e.tail), b = find(e.head);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

MultiGraph class_subgraph(const MultiGraph& g, const Decomposition& dec, int c, std::vector<EdgeId>* ids) {
  MultiGraph out(g.vertex_count());
  if (ids) ids->clear();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (dec.color[e] != c) continue;
    out.add_edge(g.edge(e).tail, g.edge(e).head);
    if (ids) ids->push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decompositions

namespace {

// Path between u and v inside forest `c`, as edge ids; nullopt if disconnected.
std::optional<std::vector<EdgeId>> forest_path(const MultiGraph& g, const std::vector<int>& color, int c, int u, int v) {
  std::vector<std::vector<EdgeId>> adj(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (color[e] != c) continue;
    adj[g.edge(e).tail].push_back(e);
    adj[g.edge(e).head].push_back(e);
  }
  std::vector<EdgeId> via(g.vertex_count(), -1);
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<int> q;
  q.push(u);
  seen[u] = true;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == v) break;
    for (EdgeId e : adj[x]) {
      int w = g.edge(e).other(x);
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = e;
      q.push(w);
    }
  }
  if (!seen[v]) return std::nullopt;
  std::vector<EdgeId> path;
  for (int x = v; x != u; x = g.edge(via[x]).other(x)) path.push_back(via[x]);
  return path;
}

}  // namespace

Decomposition nash_williams_trees(const MultiGraph& g, int d) {
  if (d < 1 || !is_tight(g, d, d))
    throw Error(ErrorCode::decomposition_impossible, "graph is not (" + std::to_string(d) + "," + std::to_string(d) + ")-tight");
  const int m = g.edge_count();
  Decomposition dec;
  dec.classes = d;
  dec.color.assign(m, -1);

  // Edmonds' matroid partition: breadth-first search for an augmenting exchange sequence.
  for (EdgeId e = 0; e < m; ++e) {
    std::vector<std::pair<EdgeId, int>> label(m, {-1, -1});
    std::vector<bool> queued(m, false);
    std::queue<EdgeId> q;
    q.push(e);
    queued[e] = true;
    bool done = false;
    while (!q.empty() && !done) {
      EdgeId y = q.front();
      q.pop();
      const auto& ye = g.edge(y);
      for (int c = 0; c < d && !done; ++c) {
        if (dec.color[y] == c || ye.is_loop()) continue;
        auto path = forest_path(g, dec.color, c, ye.tail, ye.head);
        if (!path) {
          EdgeId cur = y;
          int target = c;
          while (true) {
            int old = dec.color[cur];
            dec.color[cur] = target;
            if (cur == e) break;
            target = old;
            cur = label[cur].first;
          }
          done = true;
          break;
        }
        for (EdgeId x : *path) {
          if (queued[x]) continue;
          queued[x] = true;
          label[x] = {y, c};
          q.push(x);
        }
      }
    }
    if (!done) throw Error(ErrorCode::decomposition_impossible, "no augmenting exchange for edge " + std::to_string(e));
  }
  for (int c = 0; c < d; ++c) {
    int size = static_cast<int>(std::count(dec.color.begin(), dec.color.end(), c));
    if (size != g.vertex_count() - 1) throw Error(ErrorCode::internal, "forest is not spanning");
  }
  return dec;
}

namespace {

// Unit-capacity max flow (augmenting paths) on a small bipartite network.
struct Flow {
  struct Arc {
    int to, cap, rev;
  };
  std::vector<std::vector<Arc>> adj;
  explicit Flow(int n) : adj(n) {}
  void add(int u, int v, int cap) {
    adj[u].push_back({v, cap, static_cast<int>(adj[v].size())});
    adj[v].push_back({u, 0, static_cast<int>(adj[u].size()) - 1});
  }
  int augment(int s, int t) {
    int total = 0;
    while (true) {
      std::vector<std::pair<int, int>> prev(adj.size(), {-1, -1});
      std::queue<int> q;
      q.push(s);
      prev[s] = {s, -1};
      while (!q.empty() && prev[t].first < 0) {
        int u = q.front();
        q.pop();
        for (int i = 0; i < static_cast<int>(adj[u].size()); ++i) {
          const auto& a = adj[u][i];
          if (a.cap > 0 && prev[a.to].first < 0) {
            prev[a.to] = {u, i};
            q.push(a.to);
          }
        }
      }
      if (prev[t].first < 0) return total;
      for (int v = t; v != s; v = prev[v].first) {
        auto& a = adj[prev[v].first][prev[v].second];
        a.cap -= 1;
        adj[v][a.rev].cap += 1;
      }
      ++total;
    }
  }
};

}  // namespace

Decomposition map_decomposition(const MultiGraph& g, int d) {
  if (d < 1 || !is_tight(g, d, 0))
    throw Error(ErrorCode::decomposition_impossible, "graph is not (" + std::to_string(d) + ",0)-tight");
  const int n = g.vertex_count(), m = g.edge_count();
  const int s = 0, t = 1 + m + n;
  Flow flow(t + 1);
  for (EdgeId e = 0; e < m; ++e) {
    flow.add(s, 1 + e, 1);
    flow.add(1 + e, 1 + m + g.edge(e).tail, 1);
    if (!g.edge(e).is_loop()) flow.add(1 + e, 1 + m + g.edge(e).head, 1);
  }
  for (int v = 0; v < n; ++v) flow.add(1 + m + v, t, d);
  if (flow.augment(s, t) != m) throw Error(ErrorCode::decomposition_impossible, "no orientation with out-degree d");

  Decomposition dec;
  dec.classes = d;
  dec.color.assign(m, -1);
  dec.out_vertex.assign(m, -1);
  dec.cycle_edge.assign(m, false);
  std::vector<int> used(n, 0);
  for (EdgeId e = 0; e < m; ++e) {
    for (const auto& a : flow.adj[1 + e]) {
      if (a.to > m && a.to < t && a.cap == 0) {
        int v = a.to - 1 - m;
        dec.out_vertex[e] = v;
        dec.color[e] = used[v]++;
        break;
      }
    }
  }
  // Each class is a functional graph; mark the out-edge of the smallest vertex on each cycle.
  for (int c = 0; c < d; ++c) {
    std::vector<EdgeId> out(n, -1);
    for (EdgeId e = 0; e < m; ++e)
      if (dec.color[e] == c) out[dec.out_vertex[e]] = e;
    std::vector<int> state(n, 0);  // 0 new, 1 on current walk, 2 finished
    for (int v = 0; v < n; ++v) {
      if (state[v]) continue;
      std::vector<int> walk;
      int x = v;
      while (state[x] == 0) {
        state[x] = 1;
        walk.push_back(x);
        x = g.edge(out[x]).other(x);
      }
      if (state[x] == 1) {
        auto it = std::find(walk.begin(), walk.end(), x);
        int best = *std::min_element(it, walk.end());
        dec.cycle_edge[out[best]] = true;
      }
      for (int w : walk) state[w] = 2;
    }
  }
  return dec;
}

}  // namespace symrigid
