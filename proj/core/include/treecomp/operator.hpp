#pragma once

// Composition operators C_phi f = f o phi on mu-weighted sup-norm spaces.
//
// Everything global about C_phi (its norm sigma = sup mu(v)/mu(phi(v)), the
// essential norm as a limit of tail sups, surjectivity of phi) is only ever
// observed through a finite window |v| <= D. Sups over the window are lower
// bounds for the global quantities; verdicts say explicitly whether the
// window settles the question.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treecomp/function_space.hpp"
#include "treecomp/self_map.hpp"
#include "treecomp/tree.hpp"
#include "treecomp/vertex.hpp"

namespace treecomp {

struct AnalysisOptions {
  std::size_t budget = kDefaultVertexBudget;
  // 0 = one worker per hardware thread.
  std::size_t threads = 1;
  // Equality tolerance for ratios.
  double tolerance = kTolerance;
};

enum class Status { HoldsWitnessed, FailsWitnessed, UnknownToDepth };

std::string_view to_string(Status s);

struct Verdict {
  Status status = Status::UnknownToDepth;
  std::optional<VertexId> witness;
  std::size_t searched_depth = 0;
  std::string note;
  // The quantity the verdict rests on (a window sup, a bound...).
  std::optional<double> value;
};

/// Global facts a user may assert. Each one is recorded in reports and can
/// upgrade an UnknownToDepth verdict.
struct Assumptions {
  // m <= mu(v) <= M on the whole tree.
  std::optional<std::pair<double, double>> weight_pinch;
  bool finite_range = false;
  // Analytically known value of sigma.
  std::optional<double> sigma;
};

TreeFunction compose(const SelfMap& phi, const TreeFunction& f);

struct TraceEntry {
  std::size_t depth = 0;
  double value = 0.0;
  VertexId witness;
};

struct SigmaEstimate {
  std::size_t depth = 0;
  double value = 0.0;
  VertexId witness;
  // trace[d] is the sup over |v| <= d.
  std::vector<TraceEntry> ratio_trace;
};

/// sup of mu(v)/mu(phi(v)) over |v| <= depth, a lower bound for ||C_phi||.
SigmaEstimate sigma(const SelfMap& phi, const Weight& mu, std::size_t depth,
                    const AnalysisOptions& opts = {});

Verdict boundedness_verdict(const SelfMap& phi, const Weight& mu, std::size_t depth,
                            double blowup_threshold, const Assumptions& assume = {},
                            const AnalysisOptions& opts = {});

struct WeightRange {
  double min = 0.0;
  VertexId min_witness;
  double max = 0.0;
  VertexId max_witness;
};

WeightRange weight_uniformity(const Weight& mu, const TreeSpec& tree, std::size_t depth,
                              const AnalysisOptions& opts = {});

/// The truncation operator A_n: keeps f on |v| <= n and zeroes it beyond.
TreeFunction truncation_apply(std::size_t n, const TreeFunction& f);

struct TailRow {
  std::size_t cutoff = 0;
  // Absent when no |v| <= depth has |phi(v)| >= cutoff.
  std::optional<double> value;
  std::optional<VertexId> witness;
};

struct EssentialTail {
  std::size_t depth = 0;
  std::vector<TailRow> rows;
};

/// E_D(N) = sup { mu(v)/mu(phi(v)) : |v| <= D, |phi(v)| >= N } for each
/// cutoff N. Cutoffs must be non-empty and strictly increasing.
EssentialTail essential_tail(const SelfMap& phi, const Weight& mu, std::size_t depth,
                             const std::vector<std::size_t>& cutoffs,
                             const AnalysisOptions& opts = {});

enum class TailTrend {
  FiniteRange,   // certified or assumed finite range: compact
  NoTail,        // no image in the window reaches the smallest cutoff
  Vanishing,     // last tail value below tolerance: compact-likely
  Decreasing,    // tail still falling across the cutoffs: compact evidence
  Stabilized,    // tail flat at c > 0: essential norm >= c evidence
  Inconclusive,  // a single defined cutoff
};

std::string_view to_string(TailTrend t);

struct CompactnessReport {
  Verdict verdict;
  TailTrend trend = TailTrend::Inconclusive;
  EssentialTail tail;
  // Number of distinct images of the window.
  std::size_t image_count = 0;
  std::size_t max_image_length = 0;
};

CompactnessReport compactness_verdict(const SelfMap& phi, const Weight& mu, std::size_t depth,
                                      const std::vector<std::size_t>& cutoffs, double tol,
                                      const Assumptions& assume = {},
                                      const AnalysisOptions& opts = {});

struct Check {
  bool holds = true;
  std::optional<VertexId> witness;
  // Second vertex for collisions.
  std::optional<VertexId> other;
  std::optional<double> value;
  std::string note;
};

struct IsometryReport {
  std::size_t depth = 0;
  std::size_t preimage_depth = 0;
  // (a) mu(v)/mu(phi(v)) == 1 on the window.
  Check ratio_identically_one;
  // (b) sup of the ratio equals 1.
  Check sup_ratio_one;
  // (c) every |w| <= depth has a preimage with |v| <= preimage_depth.
  Check surjective;
  // (d) phi is injective on |v| <= depth.
  Check injective;
  // ||C_phi f_w|| <= 1 for the normalized characteristic functions f_w,
  // |w| <= depth, with preimages searched to preimage_depth.
  Check chi_norm;
  // mu == 1 on the window (the unweighted case, where surjectivity decides).
  bool unit_weight = false;
  Verdict verdict;
};

IsometryReport isometry_report(const SelfMap& phi, const Weight& mu, std::size_t depth,
                               std::size_t preimage_depth, const AnalysisOptions& opts = {});

/// C_phi^* K_v = K_{phi(v)}.
PointEvaluation adjoint_point_eval(const SelfMap& phi, const VertexId& v);

/// Sampled check of ||C_phi f|| <= sigma ||f|| on random finitely supported
/// f placed on images of the window.
struct ContractionCheck {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  // Largest ||C_phi f|| / (sigma ||f||) seen.
  double max_ratio = 0.0;
  std::size_t violations = 0;
};

ContractionCheck contraction_check(const SelfMap& phi, const Weight& mu, std::size_t depth,
                                   std::size_t samples, std::uint64_t seed,
                                   const AnalysisOptions& opts = {});

}  // namespace treecomp
