#pragma once

// Brute-force checks on fully finite instances. The routines here work on
// plain index tables and never call the analysis code they are meant to
// validate (sigma, essential_tail, ...).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "treecomp/function_space.hpp"
#include "treecomp/operator.hpp"
#include "treecomp/self_map.hpp"
#include "treecomp/tree.hpp"
#include "treecomp/vertex.hpp"

namespace treecomp {

/// A truncated tree with an explicit weight table and a self-map whose
/// image stays inside the truncation. Vertices are stored in BFS order.
class FiniteInstance {
 public:
  /// Tabulates a live problem. Throws ConfigError if phi leaves the window.
  FiniteInstance(const TreeSpec& tree, std::size_t depth, const Weight& mu, const SelfMap& phi,
                 std::size_t budget = kDefaultVertexBudget);

  /// Random instance: depth uniform in [0, max_depth], per-vertex branching
  /// uniform in [1, max_branching], log2 mu uniform in [-6, 6], phi uniform
  /// into the truncation.
  static FiniteInstance random(std::uint64_t seed, std::size_t max_depth,
                               std::size_t max_branching = 3);

  std::size_t depth() const { return depth_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t max_branching() const;

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<double>& weights() const { return weights_; }
  // Index of phi(vertices()[i]).
  const std::vector<std::size_t>& map() const { return map_; }

  std::size_t index_of(const VertexId& v) const;

  // Adapters for the analysis API. Beyond the truncation every vertex has
  // one child and unit weight.
  TreeSpec tree() const;
  Weight weight() const;
  SelfMap self_map() const;

 private:
  FiniteInstance() = default;
  void build_index();

  std::size_t depth_ = 0;
  std::vector<VertexId> vertices_;
  std::vector<std::uint64_t> branching_;
  std::vector<double> weights_;
  std::vector<std::size_t> map_;
  std::unordered_map<VertexId, std::size_t, VertexIdHash> index_;
};

struct BruteNorm {
  // Max of ||C_phi f|| / ||f|| over the whole search set.
  double value = 0.0;
  // Best over g = 1/mu and the normalized characteristic functions.
  double extremal = 0.0;
  // Best over the random samples alone.
  double random = 0.0;
};

/// Operator norm of C_phi by exhaustive search over g = 1/mu, every
/// normalized chi_w and `samples` random functions (modulus in [0,1],
/// uniform phase, normalized to mu-norm 1).
BruteNorm brute_operator_norm(const FiniteInstance& inst, std::size_t samples,
                              std::uint64_t seed);

/// max |f(v)| over the same search set restricted to ||f||_mu = 1.
double pointeval_norm_oracle(const FiniteInstance& inst, const VertexId& v, std::size_t samples,
                             std::uint64_t seed);

/// ||C_phi f_n||_mu for f_n = (1/mu) chi_{w_n}, evaluated over |v| <= depth.
/// The target lengths must be strictly increasing.
std::vector<double> compactness_sequence_test(const SelfMap& phi, const Weight& mu,
                                              const std::vector<VertexId>& targets,
                                              std::size_t depth,
                                              const AnalysisOptions& opts = {});

struct BoundCheck {
  bool pass = true;
  std::size_t functions_checked = 0;
  std::optional<VertexId> witness;
  std::optional<std::size_t> sample;
};

/// |f(v)| <= ||f||_mu / mu(v) for every vertex and every sampled f.
BoundCheck pointwise_bound_check(const FiniteInstance& inst, std::size_t samples,
                                 std::uint64_t seed);

struct CampaignRow {
  std::uint64_t seed = 0;
  std::size_t depth = 0;
  std::size_t branching = 0;
  std::size_t vertices = 0;
  double sigma = 0.0;
  double brute = 0.0;
  double diff = 0.0;
};

struct Campaign {
  std::vector<CampaignRow> rows;
  std::size_t failures = 0;
  double max_diff = 0.0;
};

/// Compares brute_operator_norm with sigma() on `instances` random
/// instances seeded seed, seed+1, ... A row fails when |diff| > tolerance.
Campaign run_campaign(std::size_t instances, std::size_t max_depth, std::uint64_t seed,
                      std::size_t samples, double tolerance, std::size_t threads = 1);

}  // namespace treecomp
