#pragma once

#include "symrigid/gain_graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace symrigid {

struct RankReport {
  int rank = 0;
  int nullity = 0;
  int trivial_dim = 0;
  bool rigid = false;
  int trials = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  // Set when independent seeds disagree on the verdict.
  bool flagged = false;
};

// |E| x d|V|; affine gains act on placement points.
Eigen::MatrixXd orbit_rigidity_matrix(const GainGraph& gg, const Placement& p);

// Each column is a flattened trivial flex v -> T p(v) + x.
Eigen::MatrixXd trivial_flex_basis(const SymmetryGroup& group, const Placement& p);
int trivial_flex_dim_at(const SymmetryGroup& group, const Placement& p);

double default_tolerance(const Eigen::MatrixXd& m, double sigma_max);
// tol < 0 selects max(rows, cols) * eps * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m, double tol = -1.0);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Integer coordinates in [-1000, 1000], resampled while degenerate.
Placement random_placement(int n, const SymmetryGroup& group, std::mt19937_64& rng);
bool placement_degenerate(const Placement& p, const SymmetryGroup& group);

RankReport rank_at(const GainGraph& gg, const Placement& p);
RankReport is_symmetrically_rigid(const GainGraph& gg, int trials = 3, std::uint64_t seed = 1);
// Repeats the test under `seeds` derived seeds; keeps the highest rank and flags disagreement.
RankReport rigidity_consensus(const GainGraph& gg, int trials = 3, std::uint64_t seed = 1, int seeds = 5);

Eigen::MatrixXd covering_rigidity_matrix(const GainGraph& gg, const Placement& p);
int symmetric_kernel_dim(const GainGraph& gg, const Placement& p);

// Rank testing for many gain maps over one multigraph with shared placements.
class OrbitEvaluator {
 public:
  OrbitEvaluator(MultiGraph graph, SymmetryGroup group, std::vector<GroupElement> elements, std::vector<int> inverse_index,
                 std::vector<Placement> placements);

  int placement_count() const { return static_cast<int>(placements_.size()); }
  int full_rank(int placement) const { return expected_[placement]; }
  // Gains given as element indices in the designated orientation.
  int rank(const std::vector<int>& gains, int placement) const;
  bool rigid(const std::vector<int>& gains, int placement) const { return rank(gains, placement) == expected_[placement]; }
  void add_placement(const Placement& p);

 private:
  MultiGraph graph_;
  SymmetryGroup group_;
  std::vector<GroupElement> elements_;
  std::vector<int> inverse_;
  std::vector<Placement> placements_;
  std::vector<std::vector<Eigen::MatrixXd>> images_;  // [placement][element]: column v = element * p(v)
  std::vector<int> expected_;                          // d|V| - trivial dim per placement
};

}  // namespace symrigid
