#pragma once

#include "symrigid/gain_graph.hpp"
#include "symrigid/rigidity.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace symrigid {

using Rational = boost::multiprecision::cpp_rational;

struct ProbabilityOptions {
  int trials = 3;
  std::uint64_t seed = 1;
  int workers = 1;
  std::uint64_t cap = std::uint64_t{1} << 24;
};

struct WorkerBlock {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t rigid = 0;
};

struct ProbabilityReport {
  BigInt total = 0;
  std::uint64_t tested = 0;
  std::uint64_t rigid = 0;
  double estimate = 0;
  Rational fraction = 0;  // exact runs only
  bool exact = false;
  double half_width = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  std::uint64_t rechecked = 0;  // maps that needed more than the first placement
  std::vector<WorkerBlock> partition;
};

// Shared placements for one (graph, group) pair; memoized on disk when SYMRIGID_CACHE names a directory.
std::vector<Placement> shared_placements(const MultiGraph& graph, const SymmetryGroup& group, int trials, std::uint64_t seed);

ProbabilityReport probability_exact(const MultiGraph& graph, const SymmetryGroup& group, const ProbabilityOptions& options = {});
ProbabilityReport probability_monte_carlo(const MultiGraph& graph, const SymmetryGroup& group, std::uint64_t samples,
                                          const ProbabilityOptions& options = {});

struct InvarianceVerdict {
  std::string name;
  bool holds = false;
  Rational lhs = 0;
  Rational rhs = 0;
};

// Adding a vertex on d distinct neighbours; in the plane also a doubled 0-extension and a
// loop-1-extension; joining two copies by k(group) edges multiplies the probabilities.
std::vector<InvarianceVerdict> probability_invariance_suite(const MultiGraph& graph, const SymmetryGroup& group,
                                                            const ProbabilityOptions& options = {});

}  // namespace symrigid
