#pragma once

#include <string>
#include <string_view>

#include "treecomp/dsl.hpp"
#include "treecomp/function_space.hpp"
#include "treecomp/self_map.hpp"
#include "treecomp/tree.hpp"

namespace treecomp {

/// A parsed spec file: sections `tree:`, `mu:` and `phi:`. A section's
/// expression starts after the colon and may continue on following lines
/// up to the next section header. `#` starts a comment and `;` acts as a
/// line break, so a whole spec fits in one command-line argument.
struct Spec {
  dsl::Expression tree;
  dsl::Expression mu;
  dsl::Expression phi;

  friend bool operator==(const Spec&, const Spec&) = default;
};

Spec parse_spec(std::string_view text);

/// Canonical text form; parse_spec(to_text(s)) == s.
std::string to_text(const Spec& spec);

/// Live objects backed by a spec.
struct Problem {
  TreeSpec tree;
  Weight mu;
  SelfMap phi;
};

Problem instantiate(const Spec& spec);

}  // namespace treecomp
