#include "symrigid/probability.hpp"

#include "symrigid/constructions.hpp"
#include "symrigid/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace symrigid {

namespace {

constexpr int kExtraPlacements = 2;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string cache_key(const MultiGraph& graph, const SymmetryGroup& group, int trials, std::uint64_t seed) {
  std::ostringstream os;
  os << graph.vertex_count() << ';';
  for (const auto& e : graph.edges()) os << e.tail << '-' << e.head << ',';
  os << ';' << group.descriptor() << ';' << trials << ';' << seed;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

std::vector<Placement> draw_placements(int n, const SymmetryGroup& group, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::vector<Placement> out;
  for (int t = 0; t < trials; ++t) out.push_back(random_placement(n, group, rng));
  return out;
}

// Decides one map: first shared placement, then the remaining shared ones, then fresh placements.
class MapTester {
 public:
  MapTester(const GainMapSpace& space, const std::vector<Placement>& placements, std::uint64_t seed)
      : space_(space),
        eval_(space.graph(), space.group(), space.elements(), space.inverse_index(), placements),
        seed_(seed) {}

  // Returns (rigid, needed a recheck).
  std::pair<bool, bool> test(const std::vector<int>& gains, std::uint64_t index) const {
    if (eval_.rigid(gains, 0)) return {true, false};
    for (int q = 1; q < eval_.placement_count(); ++q)
      if (eval_.rigid(gains, q)) return {true, true};
    std::mt19937_64 rng(derive_seed(seed_ ^ 0x5EEDF00DULL, index));
    std::vector<Placement> extra;
    for (int t = 0; t < kExtraPlacements; ++t) extra.push_back(random_placement(space_.graph().vertex_count(), space_.group(), rng));
    OrbitEvaluator fresh(space_.graph(), space_.group(), space_.elements(), space_.inverse_index(), std::move(extra));
    for (int t = 0; t < kExtraPlacements; ++t)
      if (fresh.rigid(gains, t)) return {true, true};
    return {false, true};
  }

 private:
  const GainMapSpace& space_;
  OrbitEvaluator eval_;
  std::uint64_t seed_;
};

template <class Work>
void run_blocks(std::vector<WorkerBlock>& blocks, std::vector<std::uint64_t>& rechecks, Work work) {
  rechecks.assign(blocks.size(), 0);
  if (blocks.size() == 1) {
    work(blocks[0], rechecks[0]);
    return;
  }
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < blocks.size(); ++w) threads.emplace_back([&, w] { work(blocks[w], rechecks[w]); });
  for (auto& t : threads) t.join();
}

std::vector<WorkerBlock> partition(std::uint64_t total, int workers) {
  if (workers < 1) throw Error(ErrorCode::invalid_argument, "workers must be positive");
  std::vector<WorkerBlock> blocks;
  const auto w = static_cast<std::uint64_t>(workers);
  for (std::uint64_t i = 0; i < w; ++i) blocks.push_back({total * i / w, total * (i + 1) / w, 0});
  return blocks;
}

void check_inputs(const MultiGraph& graph, const SymmetryGroup& group, const ProbabilityOptions& options) {
  if (!group.is_finite()) throw Error(ErrorCode::unsupported_enumeration, "probabilities need a finite group");
  if (graph.vertex_count() < 1) throw Error(ErrorCode::invalid_argument, "graph has no vertices");
  if (options.trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be positive");
}

}  // namespace

std::vector<Placement> shared_placements(const MultiGraph& graph, const SymmetryGroup& group, int trials, std::uint64_t seed) {
  const char* dir = std::getenv("SYMRIGID_CACHE");
  if (!dir || !*dir) return draw_placements(graph.vertex_count(), group, trials, seed);
  const int n = graph.vertex_count(), d = group.dimension();
  std::filesystem::path path = std::filesystem::path(dir) / ("placements-" + cache_key(graph, group, trials, seed) + ".txt");
  {
    std::ifstream in(path);
    std::vector<Placement> out;
    for (int t = 0; in && t < trials; ++t) {
      Placement p(n, d);
      for (int v = 0; v < n; ++v)
        for (int j = 0; j < d; ++j) in >> p(v, j);
      out.push_back(p);
    }
    if (in && static_cast<int>(out.size()) == trials) return out;
  }
  auto out = draw_placements(n, group, trials, seed);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream os(path);
  char buf[40];
  for (const auto& p : out)
    for (int v = 0; v < n; ++v)
      for (int j = 0; j < d; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", p(v, j));
        os << buf << (j + 1 == d ? '\n' : ' ');
      }
  return out;
}

ProbabilityReport probability_exact(const MultiGraph& graph, const SymmetryGroup& group, const ProbabilityOptions& options) {
  check_inputs(graph, group, options);
  GainMapSpace space(graph, group);
  ProbabilityReport report;
  report.total = space.count();
  report.exact = true;
  report.seed = options.seed;
  report.trials = options.trials;
  if (report.total > BigInt(options.cap))
    throw Error(ErrorCode::resource_cap, "gain-map space has " + report.total.str() + " maps, above the cap of " +
                                             std::to_string(options.cap) + "; use Monte Carlo sampling");
  const std::uint64_t total = space.count_u64();
  auto placements = shared_placements(graph, group, options.trials, options.seed);
  MapTester tester(space, placements, options.seed);
  report.partition = partition(total, options.workers);
  std::vector<std::uint64_t> rechecks;
  run_blocks(report.partition, rechecks, [&](WorkerBlock& block, std::uint64_t& rechecked) {
    std::vector<int> gains;
    for (std::uint64_t i = block.begin; i < block.end; ++i) {
      space.decode(i, gains);
      auto [rigid, again] = tester.test(gains, i);
      block.rigid += rigid;
      rechecked += again;
    }
  });
  for (std::size_t w = 0; w < report.partition.size(); ++w) {
    report.rigid += report.partition[w].rigid;
    report.rechecked += rechecks[w];
  }
  report.tested = total;
  report.fraction = total ? Rational(BigInt(report.rigid), BigInt(total)) : Rational(0);
  report.estimate = total ? static_cast<double>(report.rigid) / static_cast<double>(total) : 0.0;
  return report;
}

ProbabilityReport probability_monte_carlo(const MultiGraph& graph, const SymmetryGroup& group, std::uint64_t samples,
                                          const ProbabilityOptions& options) {
  check_inputs(graph, group, options);
  if (samples < 1) throw Error(ErrorCode::invalid_argument, "samples must be positive");
  GainMapSpace space(graph, group);
  ProbabilityReport report;
  report.total = space.count();
  report.seed = options.seed;
  report.trials = options.trials;
  if (report.total == 0) throw Error(ErrorCode::invalid_argument, "graph admits no gain map");
  auto placements = shared_placements(graph, group, options.trials, options.seed);
  MapTester tester(space, placements, options.seed);
  report.partition = partition(samples, options.workers);
  std::vector<std::uint64_t> rechecks;
  run_blocks(report.partition, rechecks, [&](WorkerBlock& block, std::uint64_t& rechecked) {
    std::vector<int> gains;
    for (std::uint64_t i = block.begin; i < block.end; ++i) {
      std::mt19937_64 rng(derive_seed(options.seed, i + 1));
      space.sample(rng, gains);
      auto [rigid, again] = tester.test(gains, samples + i);
      block.rigid += rigid;
      rechecked += again;
    }
  });
  for (std::size_t w = 0; w < report.partition.size(); ++w) {
    report.rigid += report.partition[w].rigid;
    report.rechecked += rechecks[w];
  }
  report.tested = samples;
  report.estimate = static_cast<double>(report.rigid) / static_cast<double>(samples);
  report.half_width = 1.96 * std::sqrt(report.estimate * (1 - report.estimate) / static_cast<double>(samples));
  return report;
}

std::vector<InvarianceVerdict> probability_invariance_suite(const MultiGraph& graph, const SymmetryGroup& group,
                                                            const ProbabilityOptions& options) {
  check_inputs(graph, group, options);
  const int d = group.dimension(), n = graph.vertex_count();
  const Rational base = probability_exact(graph, group, options).fraction;
  std::vector<InvarianceVerdict> out;
  auto compare = [&](const std::string& name, const MultiGraph& other, const Rational& expected) {
    Rational got = probability_exact(other, group, options).fraction;
    out.push_back({name, got == expected, got, expected});
  };
  if (n >= d) {
    MultiGraph g = graph;
    int v0 = g.add_vertex();
    for (int i = 0; i < d; ++i) g.add_edge(v0, i);
    compare("vertex-on-distinct-neighbours", g, base);
  }
  if (d == 2) {
    MultiGraph g = graph;
    int v0 = g.add_vertex();
    g.add_edge(v0, 0);
    g.add_edge(v0, 0);
    compare("doubled-0-extension", g, base);
    MultiGraph h = graph;
    int w0 = h.add_vertex();
    h.add_edge(w0, 0);
    h.add_edge(w0, w0);
    compare("loop-1-extension", h, base);
  }
  const int k = trivial_flex_dimension(group);
  if (n >= std::max(d + 1, k)) compare("join-product", join_k_edges(graph, graph, k), base * base);
  return out;
}

}  // namespace symrigid
