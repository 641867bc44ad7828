#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>

#include "treecomp/tree.hpp"
#include "treecomp/vertex.hpp"

namespace treecomp {

using Scalar = std::complex<double>;

/// Absolute tolerance for floating comparisons that are not exact by
/// construction.
inline constexpr double kTolerance = 1e-9;

/// A strictly positive weight on the vertices of a tree. Every evaluation
/// is checked; a non-positive or non-finite value raises WeightError.
class Weight {
 public:
  using Fn = std::function<double(const VertexId&)>;

  // `constant` marks a weight known not to vary with the vertex.
  Weight(Fn fn, std::string description, bool constant = false);

  static Weight constant(double c);

  double operator()(const VertexId& v) const;

  const std::string& description() const { return description_; }
  bool is_constant() const { return constant_; }

 private:
  Fn fn_;
  std::string description_;
  bool constant_ = false;
};

/// A complex-valued function on the vertices of a tree, either finitely
/// supported (an explicit table, zero elsewhere) or defined by a closure.
class TreeFunction {
 public:
  using Table = std::map<VertexId, Scalar>;
  using Fn = std::function<Scalar(const VertexId&)>;

  TreeFunction() : TreeFunction(Table{}) {}
  explicit TreeFunction(Table table);
  explicit TreeFunction(Fn fn);

  static TreeFunction zero() { return TreeFunction(Table{}); }
  static TreeFunction constant(Scalar c);
  /// Characteristic function of a single vertex.
  static TreeFunction chi(const VertexId& w);

  Scalar operator()(const VertexId& v) const;

  bool finitely_supported() const { return std::holds_alternative<Table>(repr_); }

  /// Exact support (entries with nonzero value) of a finitely supported
  /// function; nullptr for closure-defined ones.
  const Table* table() const;

  TreeFunction scaled(Scalar c) const;
  TreeFunction minus(const TreeFunction& other) const;

 private:
  std::variant<Table, Fn> repr_;
};

struct NormResult {
  double value = 0.0;
  VertexId witness;
  /// True when the value is the norm over the whole tree rather than a
  /// lower bound from the window.
  bool exact = false;
};

/// sup of mu(v)|f(v)| over the truncation. Exact when f is finitely
/// supported inside the window. Ties resolve to the lexicographically
/// smallest vertex; the zero function reports the root.
NormResult mu_norm(const TreeFunction& f, const Weight& mu, const Truncation& trunc,
                   std::size_t threads = 1);

NormResult sup_norm(const TreeFunction& f, const Truncation& trunc, std::size_t threads = 1);

/// The function (1/mu(w)) chi_w, which has mu-norm exactly 1.
TreeFunction normalized_chi(const VertexId& w, const Weight& mu);

/// The evaluation functional f -> f(at).
struct PointEvaluation {
  VertexId at;

  Scalar operator()(const TreeFunction& f) const { return f(at); }

  friend bool operator==(const PointEvaluation&, const PointEvaluation&) = default;
};

Scalar point_eval(const PointEvaluation& k, const TreeFunction& f);

/// Operator norm of K_v on the mu-weighted space, 1/mu(v).
double point_eval_norm(const VertexId& v, const Weight& mu);

}  // namespace treecomp
