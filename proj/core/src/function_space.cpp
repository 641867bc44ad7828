#include "treecomp/function_space.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "treecomp/errors.hpp"
#include "treecomp/parallel.hpp"
#include "treecomp/sup.hpp"

namespace treecomp {

Weight::Weight(Fn fn, std::string description, bool constant)
    : fn_(std::move(fn)), description_(std::move(description)), constant_(constant) {}

Weight Weight::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw WeightError("constant weight must be positive and finite");
  }
  return Weight([c](const VertexId&) { return c; }, std::to_string(c), true);
}

double Weight::operator()(const VertexId& v) const {
  const double x = fn_(v);
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw WeightError("weight is not positive at " + v.to_string() + " (value " +
                      std::to_string(x) + ")");
  }
  return x;
}

TreeFunction::TreeFunction(Table table) {
  std::erase_if(table, [](const auto& entry) { return entry.second == Scalar{}; });
  repr_ = std::move(table);
}

TreeFunction::TreeFunction(Fn fn) : repr_(std::move(fn)) {}

TreeFunction TreeFunction::constant(Scalar c) {
  return TreeFunction(Fn([c](const VertexId&) { return c; }));
}

TreeFunction TreeFunction::chi(const VertexId& w) { return TreeFunction(Table{{w, Scalar{1.0}}}); }

Scalar TreeFunction::operator()(const VertexId& v) const {
  if (const auto* t = std::get_if<Table>(&repr_)) {
    const auto it = t->find(v);
    return it == t->end() ? Scalar{} : it->second;
  }
  return std::get<Fn>(repr_)(v);
}

const TreeFunction::Table* TreeFunction::table() const { return std::get_if<Table>(&repr_); }

TreeFunction TreeFunction::scaled(Scalar c) const {
  if (const auto* t = table()) {
    Table out;
    for (const auto& [v, x] : *t) {
      out.emplace(v, c * x);
    }
    return TreeFunction(std::move(out));
  }
  return TreeFunction(Fn([self = *this, c](const VertexId& v) { return c * self(v); }));
}

TreeFunction TreeFunction::minus(const TreeFunction& other) const {
  if (const auto* a = table()) {
    if (const auto* b = other.table()) {
      Table out = *a;
      for (const auto& [v, x] : *b) {
        out[v] -= x;
      }
      return TreeFunction(std::move(out));
    }
  }
  return TreeFunction(
      Fn([lhs = *this, rhs = other](const VertexId& v) { return lhs(v) - rhs(v); }));
}

namespace {

double checked_product(double weight, Scalar value, const VertexId& v) {
  const double x = weight * std::abs(value);
  if (std::isnan(x)) {
    throw EvalError("function value is NaN at " + v.to_string());
  }
  return x;
}

}  // namespace

NormResult mu_norm(const TreeFunction& f, const Weight& mu, const Truncation& trunc,
                   std::size_t threads) {
  if (const auto* table = f.table()) {
    SupAccumulator acc;
    acc.offer(0.0, VertexId::root());
    bool inside = true;
    for (const auto& [v, x] : *table) {
      if (v.length() > trunc.depth) {
        inside = false;
        continue;
      }
      trunc.tree.validate(v);
      acc.offer(checked_product(mu(v), x, v), v);
    }
    return {acc.value, *acc.witness, inside};
  }

  const std::vector<VertexId> vertices = enumerate(trunc);
  const auto parts = chunked_fold<SupAccumulator>(
      vertices.size(), threads, [&](std::size_t begin, std::size_t end) {
        SupAccumulator acc;
        for (std::size_t i = begin; i < end; ++i) {
          acc.offer(checked_product(mu(vertices[i]), f(vertices[i]), vertices[i]), vertices[i]);
        }
        return acc;
      });
  SupAccumulator total;
  for (const auto& p : parts) {
    total.merge(p);
  }
  return {total.value, *total.witness, false};
}

NormResult sup_norm(const TreeFunction& f, const Truncation& trunc, std::size_t threads) {
  return mu_norm(f, Weight([](const VertexId&) { return 1.0; }, "1"), trunc, threads);
}

TreeFunction normalized_chi(const VertexId& w, const Weight& mu) {
  return TreeFunction(TreeFunction::Table{{w, Scalar{1.0 / mu(w)}}});
}

Scalar point_eval(const PointEvaluation& k, const TreeFunction& f) { return k(f); }

double point_eval_norm(const VertexId& v, const Weight& mu) { return 1.0 / mu(v); }

}  // namespace treecomp
