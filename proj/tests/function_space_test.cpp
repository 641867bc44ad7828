#include <gtest/gtest.h>

#include <cmath>

#include "treecomp/errors.hpp"
#include "treecomp/function_space.hpp"
#include "treecomp/random.hpp"

namespace treecomp {
namespace {

const Weight kLen([](const VertexId& v) { return v.is_root() ? 1.0 : double(v.length()); },
                  "if len == 0 then 1 else len");

Truncation binary(std::size_t depth) { return Truncation{TreeSpec::uniform(2), depth}; }

TEST(Weight, RejectsNonPositiveAndNonFinite) {
  const Weight zero([](const VertexId&) { return 0.0; }, "0");
  const Weight neg([](const VertexId& v) { return v.is_root() ? 1.0 : -1.0; }, "-1");
  const Weight inf([](const VertexId&) { return INFINITY; }, "inf");
  const Weight nan([](const VertexId&) { return NAN; }, "nan");
  EXPECT_THROW(zero(VertexId::root()), WeightError);
  EXPECT_THROW(neg(VertexId{0}), WeightError);
  EXPECT_NO_THROW(neg(VertexId::root()));
  EXPECT_THROW(inf(VertexId::root()), WeightError);
  EXPECT_THROW(nan(VertexId::root()), WeightError);
  EXPECT_THROW(Weight::constant(0.0), WeightError);
  EXPECT_TRUE(Weight::constant(3.0).is_constant());
  EXPECT_EQ(Weight::constant(3.0)(VertexId{1, 1}), 3.0);
}

TEST(TreeFunction, TableDropsZerosAndEvaluates) {
  TreeFunction f(TreeFunction::Table{{VertexId{0}, 2.0}, {VertexId{1}, 0.0}});
  ASSERT_TRUE(f.finitely_supported());
  EXPECT_EQ(f.table()->size(), 1u);
  EXPECT_EQ(f(VertexId{0}), Scalar(2.0));
  EXPECT_EQ(f(VertexId{1}), Scalar(0.0));
  EXPECT_EQ(f(VertexId{5, 5}), Scalar(0.0));
  EXPECT_EQ(TreeFunction::constant(Scalar(0, 1)).table(), nullptr);
}

TEST(TreeFunction, ScaledAndMinus) {
  const TreeFunction f = TreeFunction::chi(VertexId{0});
  const TreeFunction g = f.scaled(Scalar(0, 2));
  EXPECT_EQ(g(VertexId{0}), Scalar(0, 2));
  const TreeFunction h = g.minus(f);
  EXPECT_EQ(h(VertexId{0}), Scalar(-1, 2));
  EXPECT_TRUE(h.finitely_supported());
  EXPECT_TRUE(f.minus(f).table()->empty());
}

// mu = |v| off the root, so ||chi_w|| = |w|.
TEST(MuNorm, CharacteristicFunctionNormIsTheWeight) {
  const VertexId w{0, 1, 0, 1, 1};
  const NormResult r = mu_norm(TreeFunction::chi(w), kLen, binary(6));
  EXPECT_EQ(r.value, 5.0);
  EXPECT_EQ(r.witness, w);
  EXPECT_TRUE(r.exact);
  EXPECT_FALSE(mu_norm(TreeFunction::chi(w), kLen, binary(4)).exact);
}

TEST(MuNorm, ZeroFunctionReportsRoot) {
  const NormResult r = mu_norm(TreeFunction::zero(), kLen, binary(3));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.witness, VertexId::root());
  EXPECT_TRUE(r.exact);
}

TEST(MuNorm, ClosureIsAWindowLowerBound) {
  const TreeFunction g([](const VertexId& v) {
    const double n = double(v.length());
    return Scalar(n / (1.0 + n));
  });
  const NormResult r = mu_norm(g, kLen, binary(5));
  EXPECT_DOUBLE_EQ(r.value, 25.0 / 6.0);
  EXPECT_EQ(r.witness, VertexId::spine(5));
  EXPECT_FALSE(r.exact);
}

TEST(MuNorm, ParallelMatchesSequential) {
  Rng rng(5);
  TreeFunction::Table table;
  for (const auto& v : enumerate(binary(8))) {
    table[v] = Scalar(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  const TreeFunction f(table);
  const TreeFunction closure([f](const VertexId& v) { return f(v); });
  const NormResult a = mu_norm(closure, kLen, binary(8), 1);
  for (std::size_t threads : {2u, 3u, 7u, 16u}) {
    const NormResult b = mu_norm(closure, kLen, binary(8), threads);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.witness, b.witness);
  }
  EXPECT_EQ(mu_norm(f, kLen, binary(8)).value, a.value);
}

TEST(SupNorm, IsTheUnweightedNorm) {
  const TreeFunction f(TreeFunction::Table{{VertexId{1}, Scalar(3, 4)}, {VertexId{0, 0}, 2.0}});
  const NormResult r = sup_norm(f, binary(3));
  EXPECT_DOUBLE_EQ(r.value, 5.0);
  EXPECT_EQ(r.witness, (VertexId{1}));
}

TEST(PointEvaluation, NormIsReciprocalWeight) {
  const VertexId v{1, 0, 1};
  EXPECT_DOUBLE_EQ(point_eval_norm(v, kLen), 1.0 / 3.0);
  const TreeFunction f = normalized_chi(v, kLen);
  EXPECT_DOUBLE_EQ(mu_norm(f, kLen, binary(4)).value, 1.0);
  EXPECT_DOUBLE_EQ(std::abs(point_eval(PointEvaluation{v}, f)), point_eval_norm(v, kLen));
  EXPECT_EQ(PointEvaluation{v}(f), f(v));
}

TEST(PointEvaluation, DoublingWeightExample) {
  const Weight doubling([](const VertexId& v) { return std::ldexp(1.0, int(v.length())); }, "2^len");
  const VertexId v{0, 1, 0};
  EXPECT_EQ(point_eval_norm(v, doubling), 0.125);
  const Weight eight = Weight::constant(8.0);
  EXPECT_EQ(normalized_chi(v, eight)(v), Scalar(0.125));
  EXPECT_EQ(normalized_chi(v, eight)(VertexId{0, 1}), Scalar(0.0));
}

TEST(PointEvaluation, CharacteristicFunctionsSeparateVertices) {
  const auto window = enumerate(binary(3));
  for (const VertexId& v : window) {
    const TreeFunction f = normalized_chi(v, kLen);
    for (const VertexId& w : window) {
      if (w != v) {
        EXPECT_NE(PointEvaluation{v}(f), PointEvaluation{w}(f)) << v.to_string() << " " << w.to_string();
      }
    }
  }
}

}  // namespace
}  // namespace treecomp
