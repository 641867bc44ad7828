#include "treecomp/cli/serialize.hpp"

#include <cmath>

#include "treecomp/errors.hpp"

namespace treecomp::cli {

nlohmann::json function_to_json(const TreeFunction& f) {
  const auto* table = f.table();
  if (table == nullptr) {
    throw ConfigError("only finitely supported functions serialize");
  }
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [v, x] : *table) {
    out[v.to_string()] = {x.real(), x.imag()};
  }
  return out;
}

TreeFunction function_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ConfigError("a function must be a JSON object of vertex -> [re, im]");
  }
  TreeFunction::Table table;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
      throw ConfigError("value at " + key + " must be a [re, im] pair");
    }
    const Scalar x(value[0].get<double>(), value[1].get<double>());
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw ConfigError("value at " + key + " is not finite");
    }
    table[VertexId::parse(key)] = x;
  }
  return TreeFunction(std::move(table));
}

}  // namespace treecomp::cli
