#include "treecomp/tree.hpp"

#include <utility>

#include "treecomp/errors.hpp"

namespace treecomp {

TreeSpec::TreeSpec(Branching branching, std::string description)
    : branching_(std::move(branching)), description_(std::move(description)) {}

TreeSpec TreeSpec::uniform(std::uint64_t k) {
  if (k == 0) {
    throw ConfigError("a tree without terminal vertices needs branching >= 1");
  }
  return TreeSpec([k](std::span<const VertexId::Index>) { return k; }, std::to_string(k));
}

std::uint64_t TreeSpec::branching(std::span<const VertexId::Index> path) const {
  const std::uint64_t k = branching_(path);
  if (k == 0) {
    throw EvalError("branching evaluated to 0 at " +
                    VertexId(std::vector<VertexId::Index>(path.begin(), path.end())).to_string() +
                    "; trees may not have terminal vertices");
  }
  return k;
}

bool TreeSpec::is_valid(const VertexId& v) const {
  const auto path = v.path();
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (path[k] >= branching(path.first(k))) {
      return false;
    }
  }
  return true;
}

void TreeSpec::validate(const VertexId& v) const {
  const auto path = v.path();
  for (std::size_t k = 0; k < path.size(); ++k) {
    const std::uint64_t limit = branching(path.first(k));
    if (path[k] >= limit) {
      throw AddressError("vertex " + v.to_string() + ": index " + std::to_string(path[k]) +
                         " at depth " + std::to_string(k) + " exceeds branching " +
                         std::to_string(limit));
    }
  }
}

std::vector<VertexId> TreeSpec::children(const VertexId& v) const {
  validate(v);
  const std::uint64_t k = branching(v);
  std::vector<VertexId> out;
  out.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    out.push_back(v.child(static_cast<VertexId::Index>(i)));
  }
  return out;
}

std::vector<VertexId> enumerate(const Truncation& trunc) {
  std::vector<VertexId> out;
  out.push_back(VertexId::root());
  std::size_t level_begin = 0;
  for (std::size_t d = 0; d < trunc.depth; ++d) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const std::uint64_t k = trunc.tree.branching(out[i]);
      if (k > trunc.budget || out.size() + k > trunc.budget) {
        throw BudgetError("truncation to depth " + std::to_string(trunc.depth) +
                          " exceeds the vertex budget of " + std::to_string(trunc.budget));
      }
      for (std::uint64_t c = 0; c < k; ++c) {
        // out may reallocate; copy the parent first.
        VertexId next = out[i].child(static_cast<VertexId::Index>(c));
        out.push_back(std::move(next));
      }
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace treecomp
