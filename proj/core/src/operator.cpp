#include "treecomp/operator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "treecomp/errors.hpp"
#include "treecomp/parallel.hpp"
#include "treecomp/random.hpp"
#include "treecomp/sup.hpp"

namespace treecomp {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::HoldsWitnessed:
      return "HoldsWitnessed";
    case Status::FailsWitnessed:
      return "FailsWitnessed";
    case Status::UnknownToDepth:
      return "UnknownToDepth";
  }
  return "?";
}

std::string_view to_string(TailTrend t) {
  switch (t) {
    case TailTrend::FiniteRange:
      return "finite-range";
    case TailTrend::NoTail:
      return "no-tail";
    case TailTrend::Vanishing:
      return "vanishing";
    case TailTrend::Decreasing:
      return "decreasing";
    case TailTrend::Stabilized:
      return "stabilized";
    case TailTrend::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Per-vertex data for one pass over a window.
struct Sweep {
  std::vector<VertexId> vertices;
  std::vector<double> ratio;
  std::vector<std::size_t> image_length;
  // Filled only when requested.
  std::vector<VertexId> images;
};

// Evaluates phi and the ratio mu(v)/mu(phi(v)) on every vertex of the
// window. Images are materialized only if `keep_images`; the summed image
// length is capped at 64 path entries per budgeted vertex.
Sweep sweep(const SelfMap& phi, const Weight& mu, std::size_t depth, const AnalysisOptions& opts,
            bool keep_images) {
  Sweep s;
  s.vertices = enumerate(Truncation{phi.tree(), depth, opts.budget});
  const std::size_t n = s.vertices.size();
  s.ratio.resize(n);
  s.image_length.resize(n);
  if (keep_images) {
    s.images.resize(n);
  }
  const std::size_t work_limit = opts.budget * 64;
  const auto work = chunked_fold<std::size_t>(n, opts.threads, [&](std::size_t begin, std::size_t end) {
    std::size_t local = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const VertexId& v = s.vertices[i];
      VertexId image = phi(v);
      s.ratio[i] = mu(v) / mu(image);
      s.image_length[i] = image.length();
      local += image.length();
      if (local > work_limit) {
        throw BudgetError("images of the window exceed the path work budget");
      }
      if (keep_images) {
        s.images[i] = std::move(image);
      }
    }
    return local;
  });
  std::size_t total = 0;
  for (const auto w : work) {
    total += w;
  }
  if (total > work_limit) {
    throw BudgetError("images of the window exceed the path work budget (" +
                      std::to_string(total) + " > " + std::to_string(work_limit) + ")");
  }
  return s;
}

void require_depth_order(std::size_t depth, std::size_t preimage_depth) {
  if (preimage_depth < depth) {
    throw ConfigError("preimage depth must be at least the analysis depth");
  }
}

}  // namespace

TreeFunction compose(const SelfMap& phi, const TreeFunction& f) {
  return TreeFunction(TreeFunction::Fn([phi, f](const VertexId& v) { return f(phi(v)); }));
}

SigmaEstimate sigma(const SelfMap& phi, const Weight& mu, std::size_t depth,
                    const AnalysisOptions& opts) {
  const Sweep s = sweep(phi, mu, depth, opts, false);
  std::vector<SupAccumulator> per_level(depth + 1);
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    per_level[s.vertices[i].length()].offer(s.ratio[i], s.vertices[i]);
  }
  SigmaEstimate est;
  est.depth = depth;
  SupAccumulator running;
  for (std::size_t d = 0; d <= depth; ++d) {
    running.merge(per_level[d]);
    est.ratio_trace.push_back({d, running.value, *running.witness});
  }
  est.value = running.value;
  est.witness = *running.witness;
  return est;
}

WeightRange weight_uniformity(const Weight& mu, const TreeSpec& tree, std::size_t depth,
                              const AnalysisOptions& opts) {
  const auto vertices = enumerate(Truncation{tree, depth, opts.budget});
  struct Acc {
    SupAccumulator hi;
    InfAccumulator lo;
  };
  const auto parts = chunked_fold<Acc>(vertices.size(), opts.threads,
                                       [&](std::size_t begin, std::size_t end) {
                                         Acc a;
                                         for (std::size_t i = begin; i < end; ++i) {
                                           const double x = mu(vertices[i]);
                                           a.hi.offer(x, vertices[i]);
                                           a.lo.offer(x, vertices[i]);
                                         }
                                         return a;
                                       });
  Acc total;
  for (const auto& p : parts) {
    total.hi.merge(p.hi);
    total.lo.merge(p.lo);
  }
  return {total.lo.value, *total.lo.witness, total.hi.value, *total.hi.witness};
}

Verdict boundedness_verdict(const SelfMap& phi, const Weight& mu, std::size_t depth,
                            double blowup_threshold, const Assumptions& assume,
                            const AnalysisOptions& opts) {
  if (!(blowup_threshold > 0.0)) {
    throw ConfigError("blowup threshold must be positive");
  }
  const SigmaEstimate est = sigma(phi, mu, depth, opts);
  Verdict out;
  out.searched_depth = depth;
  out.value = est.value;
  out.witness = est.witness;
  if (est.value >= blowup_threshold) {
    out.status = Status::FailsWitnessed;
    out.note = "ratio " + fmt(est.value) + " at " + est.witness.to_string() +
               " exceeds the blowup threshold " + fmt(blowup_threshold);
    return out;
  }
  if (mu.is_constant()) {
    out.status = Status::HoldsWitnessed;
    out.value = 1.0;
    out.note = "mu is constant, so mu(v)/mu(phi(v)) = 1 everywhere and sigma = 1";
    return out;
  }
  if (assume.weight_pinch) {
    const auto [m, M] = *assume.weight_pinch;
    const WeightRange range = weight_uniformity(mu, phi.tree(), depth, opts);
    if (m > 0.0 && m <= M && range.min >= m - opts.tolerance && range.max <= M + opts.tolerance) {
      out.status = Status::HoldsWitnessed;
      out.value = M / m;
      out.note = "assumed weight pinch " + fmt(m) + " <= mu <= " + fmt(M) +
                 " bounds sigma by " + fmt(M / m) + "; window lower bound " + fmt(est.value);
      return out;
    }
    out.note = "assumed weight pinch is contradicted by the window (mu ranges over [" +
               fmt(range.min) + ", " + fmt(range.max) + "]); ";
  }
  if (assume.sigma && std::isfinite(*assume.sigma)) {
    if (est.value <= *assume.sigma + opts.tolerance) {
      out.status = Status::HoldsWitnessed;
      out.value = *assume.sigma;
      out.note = "assumed sigma = " + fmt(*assume.sigma) + " is finite; window lower bound " +
                 fmt(est.value);
      return out;
    }
    out.note += "assumed sigma " + fmt(*assume.sigma) + " is below the window value; ";
  }
  out.status = Status::UnknownToDepth;
  out.note += "sigma >= " + fmt(est.value) + " on the window; boundedness needs a global bound";
  return out;
}

TreeFunction truncation_apply(std::size_t n, const TreeFunction& f) {
  if (const auto* table = f.table()) {
    TreeFunction::Table kept;
    for (const auto& [v, x] : *table) {
      if (v.length() <= n) {
        kept.emplace(v, x);
      }
    }
    return TreeFunction(std::move(kept));
  }
  return TreeFunction(TreeFunction::Fn(
      [n, f](const VertexId& v) { return v.length() <= n ? f(v) : Scalar{}; }));
}

EssentialTail essential_tail(const SelfMap& phi, const Weight& mu, std::size_t depth,
                             const std::vector<std::size_t>& cutoffs,
                             const AnalysisOptions& opts) {
  if (cutoffs.empty()) {
    throw ConfigError("essential tail needs at least one cutoff");
  }
  if (!std::is_sorted(cutoffs.begin(), cutoffs.end()) ||
      std::adjacent_find(cutoffs.begin(), cutoffs.end()) != cutoffs.end()) {
    throw ConfigError("cutoffs must be strictly increasing");
  }
  const Sweep s = sweep(phi, mu, depth, opts, false);
  std::vector<SupAccumulator> acc(cutoffs.size());
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    // Cutoffs are sorted, so the qualifying ones form a prefix.
    for (std::size_t k = 0; k < cutoffs.size() && s.image_length[i] >= cutoffs[k]; ++k) {
      acc[k].offer(s.ratio[i], s.vertices[i]);
    }
  }
  EssentialTail tail;
  tail.depth = depth;
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    TailRow row;
    row.cutoff = cutoffs[k];
    if (!acc[k].empty()) {
      row.value = acc[k].value;
      row.witness = acc[k].witness;
    }
    tail.rows.push_back(std::move(row));
  }
  return tail;
}

CompactnessReport compactness_verdict(const SelfMap& phi, const Weight& mu, std::size_t depth,
                                      const std::vector<std::size_t>& cutoffs, double tol,
                                      const Assumptions& assume, const AnalysisOptions& opts) {
  if (!(tol > 0.0)) {
    throw ConfigError("compactness tolerance must be positive");
  }
  CompactnessReport rep;
  rep.tail = essential_tail(phi, mu, depth, cutoffs, opts);
  {
    const Sweep s = sweep(phi, mu, depth, opts, true);
    std::unordered_map<VertexId, char, VertexIdHash> distinct;
    for (std::size_t i = 0; i < s.images.size(); ++i) {
      distinct.emplace(s.images[i], 0);
      rep.max_image_length = std::max(rep.max_image_length, s.image_length[i]);
    }
    rep.image_count = distinct.size();
  }
  Verdict& v = rep.verdict;
  v.searched_depth = depth;

  if (phi.is_constant() || assume.finite_range) {
    rep.trend = TailTrend::FiniteRange;
    v.status = Status::HoldsWitnessed;
    v.value = 0.0;
    v.note = phi.is_constant()
                 ? "constant map: finite range, so C_phi is compact"
                 : "finite range (assumed): C_phi is compact; window shows " +
                       std::to_string(rep.image_count) + " distinct image(s)";
    return rep;
  }

  std::vector<const TailRow*> defined;
  for (const auto& row : rep.tail.rows) {
    if (row.value) {
      defined.push_back(&row);
    }
  }
  v.status = Status::UnknownToDepth;
  if (defined.empty()) {
    rep.trend = TailTrend::NoTail;
    v.note = "no image of the window reaches length " + std::to_string(cutoffs.front()) +
             " (max image length " + std::to_string(rep.max_image_length) +
             "); consistent with finite range but not certified";
    return rep;
  }
  const TailRow& last = *defined.back();
  v.value = *last.value;
  v.witness = last.witness;
  if (*last.value < tol) {
    rep.trend = TailTrend::Vanishing;
    v.note = "compact-likely: tail sup " + fmt(*last.value) + " at cutoff " +
             std::to_string(last.cutoff) + " is below tolerance " + fmt(tol);
    return rep;
  }
  if (defined.size() < 2) {
    rep.trend = TailTrend::Inconclusive;
    v.note = "only cutoff " + std::to_string(last.cutoff) + " is reached in the window";
    return rep;
  }
  const TailRow& prev = *defined[defined.size() - 2];
  if (*prev.value - *last.value <= tol) {
    rep.trend = TailTrend::Stabilized;
    v.status = Status::FailsWitnessed;
    v.note = "tail sup stabilizes at " + fmt(*last.value) +
             " across cutoffs; essential norm lower bound within the window";
    return rep;
  }
  rep.trend = TailTrend::Decreasing;
  v.note = "compact evidence: tail sup decreases to " + fmt(*last.value) + " at cutoff " +
           std::to_string(last.cutoff);
  return rep;
}

IsometryReport isometry_report(const SelfMap& phi, const Weight& mu, std::size_t depth,
                               std::size_t preimage_depth, const AnalysisOptions& opts) {
  require_depth_order(depth, preimage_depth);
  const double tol = opts.tolerance;
  IsometryReport rep;
  rep.depth = depth;
  rep.preimage_depth = preimage_depth;

  const Sweep inner = sweep(phi, mu, depth, opts, true);

  // (a), (b) and (d) on |v| <= depth.
  SupAccumulator sup;
  std::unordered_map<VertexId, std::size_t, VertexIdHash> first_preimage;
  for (std::size_t i = 0; i < inner.vertices.size(); ++i) {
    const VertexId& v = inner.vertices[i];
    const double r = inner.ratio[i];
    sup.offer(r, v);
    if (std::fabs(r - 1.0) > tol && rep.ratio_identically_one.holds) {
      rep.ratio_identically_one.holds = false;
      rep.ratio_identically_one.witness = v;
      rep.ratio_identically_one.value = r;
    }
    const auto [it, inserted] = first_preimage.emplace(inner.images[i], i);
    if (!inserted && rep.injective.holds) {
      rep.injective.holds = false;
      rep.injective.witness = inner.vertices[it->second];
      rep.injective.other = v;
      rep.injective.note = "both map to " + inner.images[i].to_string();
    }
  }
  rep.sup_ratio_one.value = sup.value;
  rep.sup_ratio_one.witness = sup.witness;
  rep.sup_ratio_one.holds = std::fabs(sup.value - 1.0) <= tol;
  rep.sup_ratio_one.note = "window sup of mu(v)/mu(phi(v)) is " + fmt(sup.value);

  // (c) and the characteristic-function probe use preimages to preimage_depth.
  const Sweep outer = sweep(phi, mu, preimage_depth, opts, true);
  std::unordered_map<VertexId, double, VertexIdHash> best_preimage_weight;
  for (std::size_t i = 0; i < outer.vertices.size(); ++i) {
    if (outer.image_length[i] > depth) {
      continue;
    }
    const double w = mu(outer.vertices[i]);
    auto [it, inserted] = best_preimage_weight.emplace(outer.images[i], w);
    if (!inserted) {
      it->second = std::max(it->second, w);
    }
  }
  const auto targets = enumerate(Truncation{phi.tree(), depth, opts.budget});
  for (const auto& w : targets) {
    const auto it = best_preimage_weight.find(w);
    if (it == best_preimage_weight.end()) {
      if (rep.surjective.holds) {
        rep.surjective.holds = false;
        rep.surjective.witness = w;
        rep.surjective.note = "no preimage of " + w.to_string() + " with |v| <= " +
                              std::to_string(preimage_depth);
      }
      continue;
    }
    // ||C_phi f_w||_mu >= max over found preimages of mu(v)/mu(w).
    const double lower = it->second / mu(w);
    if (lower > 1.0 + tol && rep.chi_norm.holds) {
      rep.chi_norm.holds = false;
      rep.chi_norm.witness = w;
      rep.chi_norm.value = lower;
      rep.chi_norm.note = "||C_phi chi_w||_mu >= " + fmt(it->second) + " but ||chi_w||_mu = " +
                          fmt(mu(w));
    }
  }

  const WeightRange range = weight_uniformity(mu, phi.tree(), depth, opts);
  rep.unit_weight = std::fabs(range.min - 1.0) <= tol && std::fabs(range.max - 1.0) <= tol;

  Verdict& v = rep.verdict;
  v.searched_depth = depth;
  if (!rep.sup_ratio_one.holds) {
    v.status = Status::FailsWitnessed;
    v.witness = rep.sup_ratio_one.witness;
    v.value = sup.value;
    v.note = "necessary condition fails: sup of mu(v)/mu(phi(v)) is " + fmt(sup.value) +
             ", not 1";
  } else if (!rep.surjective.holds) {
    v.status = Status::FailsWitnessed;
    v.witness = rep.surjective.witness;
    v.note = "necessary condition fails: " + rep.surjective.note;
  } else if (!rep.chi_norm.holds) {
    v.status = Status::FailsWitnessed;
    v.witness = rep.chi_norm.witness;
    v.value = rep.chi_norm.value;
    v.note = "norm not preserved: " + rep.chi_norm.note;
  } else if (rep.ratio_identically_one.holds) {
    v.status = Status::HoldsWitnessed;
    v.value = 1.0;
    v.note = rep.unit_weight
                 ? "unit weight and phi surjective up to depth " + std::to_string(depth) +
                       ": isometry evidence"
                 : "ratio identically 1 and phi surjective up to depth " +
                       std::to_string(depth) + ": isometry evidence";
  } else if (rep.injective.holds) {
    v.status = Status::FailsWitnessed;
    v.witness = rep.ratio_identically_one.witness;
    v.value = rep.ratio_identically_one.value;
    v.note = "phi injective on the window but the ratio is not identically 1";
  } else {
    v.status = Status::UnknownToDepth;
    v.witness = rep.ratio_identically_one.witness;
    v.note = "necessary conditions hold on the window; sufficient ones do not";
  }
  return rep;
}

PointEvaluation adjoint_point_eval(const SelfMap& phi, const VertexId& v) {
  return PointEvaluation{phi(v)};
}

ContractionCheck contraction_check(const SelfMap& phi, const Weight& mu, std::size_t depth,
                                   std::size_t samples, std::uint64_t seed,
                                   const AnalysisOptions& opts) {
  const Sweep s = sweep(phi, mu, depth, opts, true);
  double sig = 0.0;
  for (const double r : s.ratio) {
    sig = std::max(sig, r);
  }
  // Index the distinct images and their weights.
  std::unordered_map<VertexId, std::size_t, VertexIdHash> index;
  std::vector<double> image_weight;
  std::vector<std::size_t> image_of(s.vertices.size());
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    const auto [it, inserted] = index.emplace(s.images[i], image_weight.size());
    if (inserted) {
      image_weight.push_back(mu(s.images[i]));
    }
    image_of[i] = it->second;
  }

  ContractionCheck out;
  out.samples = samples;
  out.seed = seed;
  Rng rng(seed);
  std::vector<double> modulus(image_weight.size());
  for (std::size_t k = 0; k < samples; ++k) {
    // |f| on images only; phases do not affect any modulus below.
    double f_norm = 0.0;
    for (std::size_t j = 0; j < modulus.size(); ++j) {
      modulus[j] = rng.uniform();
      f_norm = std::max(f_norm, image_weight[j] * modulus[j]);
    }
    if (f_norm == 0.0) {
      continue;
    }
    double cf_norm = 0.0;
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      cf_norm = std::max(cf_norm, mu(s.vertices[i]) * modulus[image_of[i]]);
    }
    const double ratio = cf_norm / (sig * f_norm);
    out.max_ratio = std::max(out.max_ratio, ratio);
    if (cf_norm > sig * f_norm * (1.0 + 1e-12) + opts.tolerance) {
      ++out.violations;
    }
  }
  return out;
}

}  // namespace treecomp
