#include "symrigid/constructions.hpp"

#include "symrigid/errors.hpp"
#include "symrigid/sparsity.hpp"

#include <algorithm>
#include <functional>

namespace symrigid {

MultiGraph base_graph(int loops) {
  MultiGraph g(1);
  for (int i = 0; i < loops; ++i) g.add_edge(0, 0);
  return g;
}

std::vector<MultiGraph> replay(const ConstructionSequence& seq) {
  std::vector<MultiGraph> out{base_graph(seq.base_loops)};
  for (const auto& step : seq.steps) out.push_back(apply_extension(out.back(), step));
  return out;
}

bool sequence_reproduces(const ConstructionSequence& seq, const MultiGraph& target) {
  MultiGraph g = replay(seq).back();
  if (g.vertex_count() != target.vertex_count() || g.edge_count() != target.edge_count()) return false;
  if (static_cast<int>(seq.vertex_map.size()) != g.vertex_count() || static_cast<int>(seq.edge_map.size()) != g.edge_count())
    return false;
  std::vector<bool> vseen(target.vertex_count(), false), eseen(target.edge_count(), false);
  for (int v : seq.vertex_map) {
    if (v < 0 || v >= target.vertex_count() || vseen[v]) return false;
    vseen[v] = true;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto img = seq.edge_map[e];
    if (img.edge < 0 || img.edge >= target.edge_count() || eseen[img.edge]) return false;
    eseen[img.edge] = true;
    int t = seq.vertex_map[g.edge(e).tail], h = seq.vertex_map[g.edge(e).head];
    if (img.reversed) std::swap(t, h);
    if (t != target.edge(img.edge).tail || h != target.edge(img.edge).head) return false;
  }
  return true;
}

namespace {

constexpr long kSearchCap = 1000000;

struct TokenEdge {
  int a, b, token;
};

struct Record {
  ExtensionKind kind;
  int vertex;
  std::vector<int> attach;       // target vertex ids
  std::vector<int> removed;      // tokens the extension deletes
  std::vector<int> created;      // tokens the extension appends, in new-edge order
};

struct State {
  std::vector<bool> alive;
  std::vector<TokenEdge> edges;
  int next_token;
};

class Reducer {
 public:
  Reducer(const MultiGraph& g, int l, int bundle_cap) : target_(g), l_(l), bundle_cap_(bundle_cap) {}

  ConstructionSequence run() {
    State s;
    s.alive.assign(target_.vertex_count(), true);
    for (EdgeId e = 0; e < target_.edge_count(); ++e) s.edges.push_back({target_.edge(e).tail, target_.edge(e).head, e});
    s.next_token = target_.edge_count();
    if (!search(s)) throw Error(ErrorCode::not_tight, "no reduction sequence found");
    return build();
  }

 private:
  const MultiGraph& target_;
  int l_;
  int bundle_cap_;
  long nodes_ = 0;
  std::vector<Record> records_;
  State final_;

  int base_loops() const { return 2 - l_; }

  bool acceptable(const State& s) const {
    std::vector<int> index(s.alive.size(), -1);
    int n = 0;
    for (std::size_t v = 0; v < s.alive.size(); ++v)
      if (s.alive[v]) index[v] = n++;
    MultiGraph g(n);
    for (const auto& e : s.edges) g.add_edge(index[e.a], index[e.b]);
    if (g.max_bundle() > bundle_cap_) return false;
    return is_tight(g, 2, l_);
  }

  bool finished(const State& s) const {
    int alive = static_cast<int>(std::count(s.alive.begin(), s.alive.end(), true));
    return alive == 1 && static_cast<int>(s.edges.size()) == base_loops();
  }

  bool search(const State& s) {
    if (++nodes_ > kSearchCap) throw Error(ErrorCode::resource_cap, "reduction search exceeded its node budget");
    if (finished(s)) {
      final_ = s;
      return true;
    }
    for (auto& [rec, next] : candidates(s)) {
      if (!acceptable(next)) continue;
      records_.push_back(rec);
      if (search(next)) return true;
      records_.pop_back();
    }
    return false;
  }

  std::vector<std::pair<Record, State>> candidates(const State& s) const {
    const int alive = static_cast<int>(std::count(s.alive.begin(), s.alive.end(), true));
    std::vector<std::pair<Record, State>> out[6];
    for (int v = 0; v < static_cast<int>(s.alive.size()); ++v) {
      if (!s.alive[v]) continue;
      std::vector<int> loops;
      std::vector<std::pair<int, int>> slots;  // (token, neighbour)
      State rest{s.alive, {}, s.next_token};
      rest.alive[v] = false;
      for (const auto& e : s.edges) {
        if (e.a == v && e.b == v)
          loops.push_back(e.token);
        else if (e.a == v)
          slots.push_back({e.token, e.b});
        else if (e.b == v)
          slots.push_back({e.token, e.a});
        else
          rest.edges.push_back(e);
      }
      const std::size_t nl = loops.size(), ns = slots.size();
      auto token = [&](std::size_t i) { return slots[i].first; };
      auto nb = [&](std::size_t i) { return slots[i].second; };

      if (nl == 0 && ns == 2)
        out[0].push_back({{ExtensionKind::zero, v, {nb(0), nb(1)}, {}, {token(0), token(1)}}, rest});
      if (nl == 1 && ns == 1)
        out[1].push_back({{ExtensionKind::loop_one, v, {nb(0)}, {}, {token(0), loops[0]}}, rest});
      if (l_ == 0 && nl == 2 && ns == 0 && alive > 1)
        out[2].push_back({{ExtensionKind::loop_zero, v, {}, {}, {loops[0], loops[1]}}, rest});
      if (nl == 0 && ns == 3) {
        const int pairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
        for (const auto& p : pairs) {
          State next = rest;
          int t = next.next_token++;
          next.edges.push_back({nb(p[0]), nb(p[1]), t});
          out[3].push_back({{ExtensionKind::one, v, {nb(p[0]), nb(p[1]), nb(p[2])}, {t}, {token(p[0]), token(p[1]), token(p[2])}}, next});
        }
      }
      if (l_ == 0 && nl == 1 && ns == 2) {
        State next = rest;
        int t = next.next_token++;
        next.edges.push_back({nb(0), nb(1), t});
        out[4].push_back({{ExtensionKind::loop_two, v, {nb(0), nb(1)}, {t}, {token(0), token(1), loops[0]}}, next});
      }
      if (l_ == 0 && nl == 0 && ns == 4) {
        const int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        for (const auto& p : pairs) {
          State next = rest;
          int t1 = next.next_token++, t2 = next.next_token++;
          next.edges.push_back({nb(p[0]), nb(p[1]), t1});
          next.edges.push_back({nb(p[2]), nb(p[3]), t2});
          out[5].push_back({{ExtensionKind::two, v, {nb(p[0]), nb(p[1]), nb(p[2]), nb(p[3])}, {t1, t2},
                             {token(p[0]), token(p[1]), token(p[2]), token(p[3])}},
                            next});
        }
      }
    }
    std::vector<std::pair<Record, State>> all;
    for (auto& bucket : out)
      for (auto& c : bucket) all.push_back(std::move(c));
    return all;
  }

  ConstructionSequence build() const {
    ConstructionSequence seq;
    seq.base_loops = base_loops();
    int base = static_cast<int>(std::find(final_.alive.begin(), final_.alive.end(), true) - final_.alive.begin());
    std::vector<int> replay_of(target_.vertex_count(), -1);
    replay_of[base] = 0;
    seq.vertex_map = {base};
    std::vector<int> tokens;
    for (const auto& e : final_.edges) tokens.push_back(e.token);
    MultiGraph g = base_graph(seq.base_loops);

    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
      ExtensionStep step;
      step.kind = it->kind;
      for (int a : it->attach) step.attach.push_back(replay_of[a]);
      for (int t : it->removed) {
        auto pos = std::find(tokens.begin(), tokens.end(), t);
        if (pos == tokens.end()) throw Error(ErrorCode::internal, "lost edge token during replay");
        step.removed.push_back(static_cast<EdgeId>(pos - tokens.begin()));
      }
      std::vector<int> kept;
      for (std::size_t i = 0; i < tokens.size(); ++i)
        if (std::find(step.removed.begin(), step.removed.end(), static_cast<EdgeId>(i)) == step.removed.end())
          kept.push_back(tokens[i]);
      kept.insert(kept.end(), it->created.begin(), it->created.end());
      tokens = std::move(kept);
      g = apply_extension(g, step);
      replay_of[it->vertex] = g.vertex_count() - 1;
      seq.vertex_map.push_back(it->vertex);
      seq.steps.push_back(std::move(step));
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      int t = tokens[e];
      if (t >= target_.edge_count()) throw Error(ErrorCode::internal, "synthetic edge survived replay");
      const auto& x = g.edge(e);
      bool reversed = !x.is_loop() && seq.vertex_map[x.tail] != target_.edge(t).tail;
      seq.edge_map.push_back({t, reversed});
    }
    return seq;
  }
};

}  // namespace

ConstructionSequence reduction_sequence_21(const MultiGraph& g, bool forbid_triples) {
  if (!is_tight(g, 2, 1)) throw Error(ErrorCode::not_tight, "graph is not (2,1)-tight");
  if (forbid_triples && g.max_bundle() > 2) throw Error(ErrorCode::invalid_argument, "graph has a triple of parallel edges");
  return Reducer(g, 1, forbid_triples ? 2 : 1 << 20).run();
}

ConstructionSequence reduction_sequence_20(const MultiGraph& g, bool forbid_quadruples) {
  if (!is_tight(g, 2, 0)) throw Error(ErrorCode::not_tight, "graph is not (2,0)-tight");
  if (forbid_quadruples && g.max_bundle() > 3)
    throw Error(ErrorCode::invalid_argument, "graph has a quadruple of parallel edges");
  return Reducer(g, 0, forbid_quadruples ? 3 : 1 << 20).run();
}

}  // namespace symrigid
