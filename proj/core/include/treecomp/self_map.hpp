#pragma once

#include <functional>
#include <string>
#include <utility>

#include "treecomp/tree.hpp"
#include "treecomp/vertex.hpp"

namespace treecomp {

/// A self-map of a tree. Every image is validated against the ambient tree.
class SelfMap {
 public:
  using Fn = std::function<VertexId(const VertexId&)>;

  SelfMap(Fn fn, TreeSpec tree, std::string description, bool constant = false)
      : fn_(std::move(fn)),
        tree_(std::move(tree)),
        description_(std::move(description)),
        constant_(constant) {}

  static SelfMap identity(TreeSpec tree) {
    return SelfMap([](const VertexId& v) { return v; }, std::move(tree), "v");
  }
  static SelfMap constant(TreeSpec tree, VertexId target) {
    tree.validate(target);
    auto text = target.is_root() ? std::string("root") : "\"" + target.to_string() + "\"";
    return SelfMap([t = std::move(target)](const VertexId&) { return t; }, std::move(tree),
                   std::move(text), true);
  }
  /// v -> parent of v, and the root to itself.
  static SelfMap parent_or_root(TreeSpec tree) {
    return SelfMap([](const VertexId& v) { return v.parent_or_root(); }, std::move(tree),
                   "parent(v)");
  }

  VertexId operator()(const VertexId& v) const {
    VertexId image = fn_(v);
    tree_.validate(image);
    return image;
  }

  const TreeSpec& tree() const { return tree_; }
  const std::string& description() const { return description_; }

  /// True when the map is known not to depend on its argument, which
  /// certifies a one-point (hence finite) range.
  bool is_constant() const { return constant_; }

 private:
  Fn fn_;
  TreeSpec tree_;
  std::string description_;
  bool constant_ = false;
};

}  // namespace treecomp
