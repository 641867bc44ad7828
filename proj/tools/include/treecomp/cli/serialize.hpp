#pragma once

#include <nlohmann/json.hpp>

#include "treecomp/function_space.hpp"

namespace treecomp::cli {

/// {"0.1": [re, im], ...} for a finitely supported function. Throws
/// ConfigError for closure-defined functions.
nlohmann::json function_to_json(const TreeFunction& f);

/// Inverse of function_to_json. Throws ConfigError on malformed input and
/// AddressError on malformed vertex keys.
TreeFunction function_from_json(const nlohmann::json& j);

}  // namespace treecomp::cli
