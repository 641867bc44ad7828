#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "treecomp/vertex.hpp"

namespace treecomp {

inline constexpr std::size_t kDefaultVertexBudget = 1'000'000;

// Longest vertex path any single evaluation may build. Spine targets such as
// 2^|v| grow quickly; this keeps them from exhausting memory.
inline constexpr std::size_t kMaxPathLength = std::size_t{1} << 24;

/// A rooted, locally finite tree without terminal vertices, given lazily by
/// its branching function. The function receives the child-index path of a
/// vertex and returns its number of children, which must be at least one.
class TreeSpec {
 public:
  using Branching = std::function<std::uint64_t(std::span<const VertexId::Index>)>;

  TreeSpec(Branching branching, std::string description);

  /// Every vertex has exactly `k` children.
  static TreeSpec uniform(std::uint64_t k);

  std::uint64_t branching(std::span<const VertexId::Index> path) const;
  std::uint64_t branching(const VertexId& v) const { return branching(v.path()); }

  const std::string& description() const { return description_; }

  bool is_valid(const VertexId& v) const;
  // Throws AddressError naming the first out-of-range index.
  void validate(const VertexId& v) const;

  std::vector<VertexId> children(const VertexId& v) const;

 private:
  Branching branching_;
  std::string description_;
};

/// The finite window {v : |v| <= depth} onto a tree.
struct Truncation {
  TreeSpec tree;
  std::size_t depth = 0;
  std::size_t budget = kDefaultVertexBudget;
};

/// Vertices of the window in breadth-first order, root first, children in
/// increasing index order. Throws BudgetError once more than `budget`
/// vertices would be produced.
std::vector<VertexId> enumerate(const Truncation& trunc);

}  // namespace treecomp
