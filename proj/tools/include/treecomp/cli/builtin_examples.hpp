#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace treecomp::cli {

struct BuiltinSpec {
  std::string name;
  std::string summary;
  // Spec-file text (tree/mu/phi sections).
  std::string text;
};

/// Spec texts for the reproduced worked examples, in a fixed order.
/// "doubling-final" contributes two specs sharing the parent map.
const std::vector<BuiltinSpec>& builtin_specs();

const BuiltinSpec& builtin_spec(std::string_view name);

/// Names accepted by `examples --which`.
const std::vector<std::string>& example_names();

}  // namespace treecomp::cli
