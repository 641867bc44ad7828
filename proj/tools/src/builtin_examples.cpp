#include "treecomp/cli/builtin_examples.hpp"

#include "treecomp/errors.hpp"

namespace treecomp::cli {

namespace {

// Two rays joined at the root. Level d > 0 holds two vertices, so windows of
// depth 40 and spine images of length 1600 stay cheap.
constexpr std::string_view kTwoRays = "if len == 0 then 2 else 1";

}  // namespace

const std::vector<BuiltinSpec>& builtin_specs() {
  static const std::vector<BuiltinSpec> specs = {
      {"unbounded-3",
       "bounded weight, phi(v) at length 2^|v|: C_phi is unbounded",
       "# mu(o) = 2, mu(v) = 1/|v|; phi sends v to the spine vertex of length 2^|v|\n"
       "tree: " + std::string(kTwoRays) + "\n"
       "mu: if len == 0 then 2 else 1/len\n"
       "phi: spine(2^len)\n"},
      {"compact-parity-4",
       "parity weight: compact although the ratio does not tend to 0",
       "# mu = |v| on even lengths, 1 on odd lengths and at the root\n"
       "tree: " + std::string(kTwoRays) + "\n"
       "mu: if len == 0 then 1 else (if len mod 2 == 0 then len else 1)\n"
       "phi: if len == 0 then root\n"
       "     else (if len mod 2 == 0 then spine(len^2) else child(root, 0))\n"},
      {"parent-5",
       "mu = |v|, parent map: surjective, yet not an isometry",
       "tree: 2\n"
       "mu: if len == 0 then 1 else len\n"
       "phi: parent(v)\n"},
      {"doubling-final-unit",
       "unit weight, parent map: isometry on the bounded functions",
       "tree: 2\n"
       "mu: 1\n"
       "phi: parent(v)\n"},
      {"doubling-final",
       "mu = 2^|v|, parent map: ratio 2 off the root, not an isometry",
       "tree: 2\n"
       "mu: 2^len\n"
       "phi: parent(v)\n"},
  };
  return specs;
}

const BuiltinSpec& builtin_spec(std::string_view name) {
  for (const auto& s : builtin_specs()) {
    if (s.name == name) {
      return s;
    }
  }
  throw ConfigError("unknown built-in spec '" + std::string(name) + "'");
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"unbounded-3", "compact-parity-4", "parent-5",
                                                 "doubling-final", "all"};
  return names;
}

}  // namespace treecomp::cli
