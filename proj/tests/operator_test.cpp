#include <gtest/gtest.h>

#include <cmath>

#include "treecomp/cli/builtin_examples.hpp"
#include "treecomp/errors.hpp"
#include "treecomp/operator.hpp"
#include "treecomp/spec.hpp"

namespace treecomp {
namespace {

Problem builtin(std::string_view name) {
  return instantiate(parse_spec(cli::builtin_spec(name).text));
}

Problem inline_spec(std::string_view text) { return instantiate(parse_spec(text)); }

TEST(Sigma, UnboundedExampleGrowsLike2dOverD) {
  const Problem p = builtin("unbounded-3");
  const SigmaEstimate s = sigma(p.phi, p.mu, 10);
  EXPECT_EQ(s.value, 1024.0 / 10.0);
  EXPECT_EQ(s.witness, VertexId::spine(10));
  ASSERT_EQ(s.ratio_trace.size(), 11u);
  // mu(o)/mu(phi(o)) = 2/1 with phi(o) = spine(1).
  EXPECT_EQ(s.ratio_trace[0].value, 2.0);
  for (std::size_t d = 1; d < s.ratio_trace.size(); ++d) {
    EXPECT_GE(s.ratio_trace[d].value, s.ratio_trace[d - 1].value);
    EXPECT_EQ(s.ratio_trace[d].depth, d);
  }
  EXPECT_EQ(s.ratio_trace[10].value, 102.4);
}

TEST(Sigma, ParallelIsBitIdentical) {
  const Problem p = inline_spec("tree: 3; mu: 1 + len + last / 7; phi: child(parent(v), 0)");
  const SigmaEstimate a = sigma(p.phi, p.mu, 7, {kDefaultVertexBudget, 1});
  for (std::size_t threads : {2u, 5u, 32u}) {
    const SigmaEstimate b = sigma(p.phi, p.mu, 7, {kDefaultVertexBudget, threads});
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.witness, b.witness);
    for (std::size_t d = 0; d < a.ratio_trace.size(); ++d) {
      EXPECT_EQ(a.ratio_trace[d].value, b.ratio_trace[d].value);
      EXPECT_EQ(a.ratio_trace[d].witness, b.ratio_trace[d].witness);
    }
  }
}

TEST(Sigma, PathWorkBudget) {
  const Problem p = inline_spec("tree: 1; mu: 1; phi: spine(2^(len + 10))");
  EXPECT_THROW(sigma(p.phi, p.mu, 12, {1000}), BudgetError);
}

TEST(Boundedness, Verdicts) {
  const Problem unbounded = builtin("unbounded-3");
  const Verdict fails = boundedness_verdict(unbounded.phi, unbounded.mu, 12, 100.0);
  EXPECT_EQ(fails.status, Status::FailsWitnessed);
  EXPECT_EQ(*fails.value, 4096.0 / 12.0);
  EXPECT_EQ(*fails.witness, VertexId::spine(12));

  const Verdict low = boundedness_verdict(unbounded.phi, unbounded.mu, 5, 100.0);
  EXPECT_EQ(low.status, Status::UnknownToDepth);

  const Problem doubling = builtin("doubling-final");
  EXPECT_EQ(boundedness_verdict(doubling.phi, doubling.mu, 8, 100.0).status, Status::UnknownToDepth);
  Assumptions sigma2;
  sigma2.sigma = 2.0;
  EXPECT_EQ(boundedness_verdict(doubling.phi, doubling.mu, 8, 100.0, sigma2).status,
            Status::HoldsWitnessed);
  Assumptions sigma_low;
  sigma_low.sigma = 1.5;
  EXPECT_EQ(boundedness_verdict(doubling.phi, doubling.mu, 8, 100.0, sigma_low).status,
            Status::UnknownToDepth);

  const Problem pinched = inline_spec("tree: 2; mu: 2 - 1 / (len + 1); phi: spine(len + 3)");
  Assumptions pinch;
  pinch.weight_pinch = std::make_pair(1.0, 2.0);
  const Verdict holds = boundedness_verdict(pinched.phi, pinched.mu, 8, 100.0, pinch);
  EXPECT_EQ(holds.status, Status::HoldsWitnessed);
  EXPECT_EQ(*holds.value, 2.0);
  Assumptions wrong;
  wrong.weight_pinch = std::make_pair(1.5, 2.0);
  EXPECT_EQ(boundedness_verdict(pinched.phi, pinched.mu, 8, 100.0, wrong).status,
            Status::UnknownToDepth);

  const Problem unit = builtin("doubling-final-unit");
  EXPECT_EQ(boundedness_verdict(unit.phi, unit.mu, 8, 100.0).status, Status::HoldsWitnessed);
  EXPECT_THROW(boundedness_verdict(unit.phi, unit.mu, 8, 0.0), ConfigError);
}

TEST(WeightUniformity, RangeAndWitnesses) {
  const Problem p = builtin("parent-5");
  const WeightRange r = weight_uniformity(p.mu, p.tree, 6);
  EXPECT_EQ(r.min, 1.0);
  EXPECT_EQ(r.min_witness, VertexId::root());
  EXPECT_EQ(r.max, 6.0);
  EXPECT_EQ(r.max_witness, VertexId::spine(6));
}

TEST(WeightUniformity, UnboundedExampleAtDepthEight) {
  const Problem p = builtin("unbounded-3");
  const WeightRange r = weight_uniformity(p.mu, p.tree, 8);
  EXPECT_EQ(r.min, 0.125);
  EXPECT_EQ(r.min_witness.length(), 8u);
  EXPECT_EQ(r.max, 2.0);
  EXPECT_EQ(r.max_witness, VertexId::root());
}

TEST(Sigma, DoublingWeightParentMap) {
  const Problem p = builtin("doubling-final");
  const SigmaEstimate s = sigma(p.phi, p.mu, 6);
  EXPECT_EQ(s.value, 2.0);
  EXPECT_EQ(s.witness, (VertexId{0}));
}

TEST(EssentialTail, ConstantMapHasNoTail) {
  const Problem p = inline_spec("tree: 2; mu: 1 + len; phi: root");
  const EssentialTail t = essential_tail(p.phi, p.mu, 6, {1, 2, 4});
  for (const TailRow& row : t.rows) {
    EXPECT_FALSE(row.value.has_value());
    EXPECT_FALSE(row.witness.has_value());
  }
  const CompactnessReport c = compactness_verdict(p.phi, p.mu, 6, {1, 2, 4}, 1e-9);
  EXPECT_EQ(c.verdict.status, Status::HoldsWitnessed);
}

TEST(EssentialTail, ParityExampleValues) {
  const Problem p = builtin("compact-parity-4");
  const EssentialTail t = essential_tail(p.phi, p.mu, 40, {4, 16, 100, 1601});
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(*t.rows[0].value, 0.5);
  EXPECT_EQ(*t.rows[0].witness, VertexId::spine(2));
  EXPECT_EQ(*t.rows[1].value, 0.25);
  EXPECT_EQ(*t.rows[1].witness, VertexId::spine(4));
  EXPECT_EQ(*t.rows[2].value, 0.1);
  EXPECT_EQ(*t.rows[2].witness, VertexId::spine(10));
  // The longest image is spine(40^2).
  EXPECT_FALSE(t.rows[3].value.has_value());
  EXPECT_FALSE(t.rows[3].witness.has_value());
}

TEST(EssentialTail, CutoffsAreValidated) {
  const Problem p = builtin("parent-5");
  EXPECT_THROW(essential_tail(p.phi, p.mu, 4, {}), ConfigError);
  EXPECT_THROW(essential_tail(p.phi, p.mu, 4, {4, 4}), ConfigError);
  EXPECT_THROW(essential_tail(p.phi, p.mu, 4, {8, 4}), ConfigError);
}

TEST(EssentialTail, MonotoneInCutoffAndDepth) {
  const Problem p = inline_spec("tree: 2; mu: 1 + 1 / (len + 1); phi: spine(len + last)");
  const std::vector<std::size_t> cutoffs = {1, 2, 3, 5, 8};
  const EssentialTail shallow = essential_tail(p.phi, p.mu, 5, cutoffs);
  const EssentialTail deep = essential_tail(p.phi, p.mu, 8, cutoffs);
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    if (k > 0 && shallow.rows[k].value) {
      EXPECT_LE(*shallow.rows[k].value, *shallow.rows[k - 1].value);
    }
    if (shallow.rows[k].value) {
      ASSERT_TRUE(deep.rows[k].value);
      EXPECT_GE(*deep.rows[k].value, *shallow.rows[k].value);
    }
  }
}

TEST(Compactness, ConstantAndIdentityOnUnitWeight) {
  const Problem constant = inline_spec("tree: 2; mu: 1; phi: child(root, 1)");
  const CompactnessReport c = compactness_verdict(constant.phi, constant.mu, 10, {1, 2, 4}, 1e-9);
  EXPECT_EQ(c.verdict.status, Status::HoldsWitnessed);
  EXPECT_EQ(c.trend, TailTrend::FiniteRange);
  EXPECT_EQ(c.image_count, 1u);

  const Problem identity = inline_spec("tree: 2; mu: 1; phi: v");
  const std::vector<std::size_t> cutoffs = {1, 2, 4, 8, 12};
  const CompactnessReport id = compactness_verdict(identity.phi, identity.mu, 12, cutoffs, 1e-9);
  for (const auto& row : id.tail.rows) {
    ASSERT_TRUE(row.value);
    EXPECT_EQ(*row.value, 1.0);
  }
  EXPECT_EQ(id.trend, TailTrend::Stabilized);
  EXPECT_EQ(id.verdict.status, Status::FailsWitnessed);
}

TEST(Compactness, TrendClassification) {
  const Problem parity = builtin("compact-parity-4");
  const CompactnessReport dec =
      compactness_verdict(parity.phi, parity.mu, 40, {4, 16, 64, 256}, 1e-9);
  EXPECT_EQ(dec.trend, TailTrend::Decreasing);
  EXPECT_EQ(dec.verdict.status, Status::UnknownToDepth);
  EXPECT_EQ(*dec.tail.rows[3].value, 1.0 / 16.0);

  const Problem parent = builtin("parent-5");
  const CompactnessReport none = compactness_verdict(parent.phi, parent.mu, 6, {64}, 1e-9);
  EXPECT_EQ(none.trend, TailTrend::NoTail);

  const CompactnessReport single = compactness_verdict(parent.phi, parent.mu, 6, {5, 64}, 1e-9);
  EXPECT_EQ(single.trend, TailTrend::Inconclusive);

  const Problem vanishing = inline_spec("tree: 1; mu: 2^(8 * len^2); phi: spine(len + 1)");
  const CompactnessReport van = compactness_verdict(vanishing.phi, vanishing.mu, 10, {2, 8}, 1e-9);
  EXPECT_EQ(van.trend, TailTrend::Vanishing);

  Assumptions finite;
  finite.finite_range = true;
  const CompactnessReport assumed =
      compactness_verdict(parent.phi, parent.mu, 6, {2, 4}, 1e-9, finite);
  EXPECT_EQ(assumed.trend, TailTrend::FiniteRange);
  EXPECT_THROW(compactness_verdict(parent.phi, parent.mu, 6, {2}, 0.0), ConfigError);
}

TEST(Isometry, UnitWeightParentMapHolds) {
  const Problem p = builtin("doubling-final-unit");
  const IsometryReport r = isometry_report(p.phi, p.mu, 8, 12);
  EXPECT_EQ(r.verdict.status, Status::HoldsWitnessed);
  EXPECT_TRUE(r.surjective.holds);
  EXPECT_FALSE(r.injective.holds);
  EXPECT_TRUE(r.unit_weight);
}

TEST(Isometry, DoublingWeightFailsAtDepthOne) {
  const Problem p = builtin("doubling-final");
  const IsometryReport r = isometry_report(p.phi, p.mu, 8, 12);
  EXPECT_EQ(r.verdict.status, Status::FailsWitnessed);
  EXPECT_EQ(*r.verdict.witness, (VertexId{0}));
  EXPECT_EQ(*r.verdict.value, 2.0);
}

TEST(Isometry, ParentFiveFails) {
  const Problem p = builtin("parent-5");
  const IsometryReport r = isometry_report(p.phi, p.mu, 12, 16);
  EXPECT_EQ(r.verdict.status, Status::FailsWitnessed);
  EXPECT_TRUE(r.surjective.holds);
  EXPECT_FALSE(r.chi_norm.holds);
}

TEST(Isometry, NonSurjectiveUnitWeightFails) {
  const Problem p = inline_spec("tree: 2; mu: 1; phi: child(v, 0)");
  const IsometryReport r = isometry_report(p.phi, p.mu, 6, 10);
  EXPECT_EQ(r.verdict.status, Status::FailsWitnessed);
  EXPECT_FALSE(r.surjective.holds);
  EXPECT_EQ(*r.surjective.witness, VertexId::root());
  EXPECT_TRUE(r.injective.holds);
}

TEST(Isometry, IdentityHoldsAndDepthOrderIsChecked) {
  const Problem p = inline_spec("tree: 3; mu: 1 + len; phi: v");
  EXPECT_EQ(isometry_report(p.phi, p.mu, 5, 5).verdict.status, Status::HoldsWitnessed);
  EXPECT_THROW(isometry_report(p.phi, p.mu, 5, 4), ConfigError);
}

TEST(Adjoint, MapsPointEvaluationsAlongPhi) {
  const Problem p = builtin("parent-5");
  const VertexId v{1, 0, 1};
  EXPECT_EQ(adjoint_point_eval(p.phi, v), (PointEvaluation{VertexId{1, 0}}));
  const TreeFunction f([](const VertexId& w) { return Scalar(double(w.length()), 1.0); });
  // (C_phi^* K_v)(f) = K_v(C_phi f).
  EXPECT_EQ(adjoint_point_eval(p.phi, v)(f), compose(p.phi, f)(v));
}

TEST(Contraction, NoViolationsAndDeterministic) {
  const Problem p = inline_spec("tree: 2; mu: 1 + len mod 3; phi: child(parent(parent(v)), 1)");
  const ContractionCheck a = contraction_check(p.phi, p.mu, 6, 64, 9);
  const ContractionCheck b = contraction_check(p.phi, p.mu, 6, 64, 9);
  EXPECT_EQ(a.violations, 0u);
  EXPECT_LE(a.max_ratio, 1.0 + 1e-12);
  EXPECT_GT(a.max_ratio, 0.0);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
}

TEST(Compose, IsFunctionComposition) {
  const Problem p = builtin("parent-5");
  const TreeFunction chi = TreeFunction::chi(VertexId{1});
  const TreeFunction c = compose(p.phi, chi);
  EXPECT_EQ(c(VertexId{1, 0}), Scalar(1.0));
  EXPECT_EQ(c(VertexId{1, 1}), Scalar(1.0));
  EXPECT_EQ(c(VertexId{1}), Scalar(0.0));
}

}  // namespace
}  // namespace treecomp
