#include "treecomp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "treecomp/errors.hpp"
#include "treecomp/parallel.hpp"
#include "treecomp/random.hpp"

namespace treecomp {

FiniteInstance::FiniteInstance(const TreeSpec& tree, std::size_t depth, const Weight& mu,
                               const SelfMap& phi, std::size_t budget)
    : depth_(depth) {
  vertices_ = enumerate(Truncation{tree, depth, budget});
  build_index();
  branching_.reserve(vertices_.size());
  weights_.reserve(vertices_.size());
  map_.reserve(vertices_.size());
  for (const auto& v : vertices_) {
    branching_.push_back(tree.branching(v));
    weights_.push_back(mu(v));
    const VertexId image = phi(v);
    const auto it = index_.find(image);
    if (it == index_.end()) {
      throw ConfigError("map sends " + v.to_string() + " to " + image.to_string() +
                        ", outside the depth-" + std::to_string(depth) + " truncation");
    }
    map_.push_back(it->second);
  }
}

FiniteInstance FiniteInstance::random(std::uint64_t seed, std::size_t max_depth,
                                      std::size_t max_branching) {
  if (max_branching == 0) {
    throw ConfigError("max branching must be positive");
  }
  Rng rng(seed);
  FiniteInstance inst;
  inst.depth_ = rng.index(0, max_depth);
  inst.vertices_.push_back(VertexId::root());
  std::size_t level_begin = 0;
  for (std::size_t d = 0; d < inst.depth_; ++d) {
    const std::size_t level_end = inst.vertices_.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const auto k = rng.index(1, max_branching);
      inst.branching_.push_back(k);
      for (std::uint64_t c = 0; c < k; ++c) {
        VertexId child = inst.vertices_[i].child(static_cast<VertexId::Index>(c));
        inst.vertices_.push_back(std::move(child));
      }
    }
    level_begin = level_end;
  }
  // Deepest level: branching is irrelevant inside the window.
  inst.branching_.resize(inst.vertices_.size(), 1);
  for (std::size_t i = 0; i < inst.vertices_.size(); ++i) {
    inst.weights_.push_back(std::exp2(rng.uniform(-6.0, 6.0)));
  }
  for (std::size_t i = 0; i < inst.vertices_.size(); ++i) {
    inst.map_.push_back(rng.index(0, inst.vertices_.size() - 1));
  }
  inst.build_index();
  return inst;
}

void FiniteInstance::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    index_.emplace(vertices_[i], i);
  }
}

std::size_t FiniteInstance::max_branching() const {
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].length() < depth_) {
      best = std::max(best, branching_[i]);
    }
  }
  return static_cast<std::size_t>(best);
}

std::size_t FiniteInstance::index_of(const VertexId& v) const {
  const auto it = index_.find(v);
  if (it == index_.end()) {
    throw AddressError("vertex " + v.to_string() + " is not in the instance");
  }
  return it->second;
}

TreeSpec FiniteInstance::tree() const {
  auto self = std::make_shared<const FiniteInstance>(*this);
  return TreeSpec(
      [self](std::span<const VertexId::Index> path) -> std::uint64_t {
        if (path.size() >= self->depth_) {
          return 1;
        }
        return self->branching_[self->index_of(
            VertexId(std::vector<VertexId::Index>(path.begin(), path.end())))];
      },
      "table");
}

Weight FiniteInstance::weight() const {
  auto self = std::make_shared<const FiniteInstance>(*this);
  return Weight(
      [self](const VertexId& v) {
        const auto it = self->index_.find(v);
        return it == self->index_.end() ? 1.0 : self->weights_[it->second];
      },
      "table");
}

SelfMap FiniteInstance::self_map() const {
  auto self = std::make_shared<const FiniteInstance>(*this);
  return SelfMap(
      [self](const VertexId& v) { return self->vertices_[self->map_[self->index_of(v)]]; }, tree(),
      "table");
}

namespace {

using Values = std::vector<Scalar>;

double weighted_norm(const FiniteInstance& inst, const Values& f) {
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    best = std::max(best, inst.weights()[i] * std::abs(f[i]));
  }
  return best;
}

double composed_norm(const FiniteInstance& inst, const Values& f) {
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    best = std::max(best, inst.weights()[i] * std::abs(f[inst.map()[i]]));
  }
  return best;
}

// Visits g = 1/mu, every normalized chi_w, then `samples` random unit
// functions. The callback receives (f, is_random).
template <class Visit>
void search_set(const FiniteInstance& inst, std::size_t samples, std::uint64_t seed, Visit visit) {
  const std::size_t n = inst.size();
  Values f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = 1.0 / inst.weights()[i];
  }
  visit(f, false);
  for (std::size_t w = 0; w < n; ++w) {
    std::fill(f.begin(), f.end(), Scalar{});
    f[w] = 1.0 / inst.weights()[w];
    visit(f, false);
  }
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const double modulus = rng.uniform();
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      f[i] = std::polar(modulus, phase);
    }
    const double norm = weighted_norm(inst, f);
    if (norm == 0.0) {
      continue;
    }
    for (auto& x : f) {
      x /= norm;
    }
    visit(f, true);
  }
}

}  // namespace

BruteNorm brute_operator_norm(const FiniteInstance& inst, std::size_t samples,
                              std::uint64_t seed) {
  if (samples == 0) {
    throw ConfigError("brute_operator_norm needs at least one random sample");
  }
  BruteNorm out;
  search_set(inst, samples, seed, [&](const Values& f, bool is_random) {
    const double norm = weighted_norm(inst, f);
    if (norm == 0.0) {
      return;
    }
    const double ratio = composed_norm(inst, f) / norm;
    out.value = std::max(out.value, ratio);
    (is_random ? out.random : out.extremal) = std::max(is_random ? out.random : out.extremal, ratio);
  });
  return out;
}

double pointeval_norm_oracle(const FiniteInstance& inst, const VertexId& v, std::size_t samples,
                             std::uint64_t seed) {
  const std::size_t at = inst.index_of(v);
  double best = 0.0;
  search_set(inst, samples, seed, [&](const Values& f, bool) {
    const double norm = weighted_norm(inst, f);
    if (norm == 0.0) {
      return;
    }
    best = std::max(best, std::abs(f[at]) / norm);
  });
  return best;
}

std::vector<double> compactness_sequence_test(const SelfMap& phi, const Weight& mu,
                                              const std::vector<VertexId>& targets,
                                              std::size_t depth, const AnalysisOptions& opts) {
  for (std::size_t n = 1; n < targets.size(); ++n) {
    if (targets[n].length() <= targets[n - 1].length()) {
      throw ConfigError("target lengths must be strictly increasing");
    }
  }
  const Truncation window{phi.tree(), depth, opts.budget};
  std::vector<double> trace;
  trace.reserve(targets.size());
  for (const auto& w : targets) {
    phi.tree().validate(w);
    trace.push_back(mu_norm(compose(phi, normalized_chi(w, mu)), mu, window, opts.threads).value);
  }
  return trace;
}

BoundCheck pointwise_bound_check(const FiniteInstance& inst, std::size_t samples,
                                 std::uint64_t seed) {
  BoundCheck out;
  const Weight mu = inst.weight();
  const Truncation window{inst.tree(), inst.depth()};
  std::size_t counter = 0;
  search_set(inst, samples, seed, [&](const Values& f, bool) {
    const std::size_t id = counter++;
    if (!out.pass) {
      return;
    }
    TreeFunction::Table table;
    for (std::size_t i = 0; i < f.size(); ++i) {
      table.emplace(inst.vertices()[i], f[i]);
    }
    const double norm = mu_norm(TreeFunction(std::move(table)), mu, window).value;
    ++out.functions_checked;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (std::abs(f[i]) > norm / inst.weights()[i] * (1.0 + 1e-12)) {
        out.pass = false;
        out.witness = inst.vertices()[i];
        out.sample = id;
        return;
      }
    }
  });
  return out;
}

Campaign run_campaign(std::size_t instances, std::size_t max_depth, std::uint64_t seed,
                      std::size_t samples, double tolerance, std::size_t threads) {
  Campaign c;
  c.rows.resize(instances);
  chunked_fold<int>(instances, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const std::uint64_t s = seed + k;
      const FiniteInstance inst = FiniteInstance::random(s, max_depth);
      CampaignRow& row = c.rows[k];
      row.seed = s;
      row.depth = inst.depth();
      row.branching = inst.max_branching();
      row.vertices = inst.size();
      row.sigma = sigma(inst.self_map(), inst.weight(), inst.depth()).value;
      row.brute = brute_operator_norm(inst, samples, s).value;
      row.diff = std::fabs(row.sigma - row.brute);
    }
    return 0;
  });
  for (const auto& row : c.rows) {
    c.max_diff = std::max(c.max_diff, row.diff);
    if (!(row.diff <= tolerance)) {
      ++c.failures;
    }
  }
  return c;
}

}  // namespace treecomp
