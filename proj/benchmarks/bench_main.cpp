#include <benchmark/benchmark.h>

#include "treecomp/dsl.hpp"
#include "treecomp/operator.hpp"
#include "treecomp/spec.hpp"

namespace {

using namespace treecomp;

void BM_Enumerate(benchmark::State& state) {
  const Truncation t{TreeSpec::uniform(2), static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate(t));
  }
  state.SetItemsProcessed(state.iterations() * ((std::int64_t{2} << state.range(0)) - 1));
}
BENCHMARK(BM_Enumerate)->DenseRange(10, 18, 4);

void BM_SigmaParentMap(benchmark::State& state) {
  const Problem p = instantiate(parse_spec("tree: 2; mu: 1 + len; phi: parent(v)"));
  const AnalysisOptions opts{kDefaultVertexBudget, static_cast<std::size_t>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma(p.phi, p.mu, static_cast<std::size_t>(state.range(0)), opts));
  }
}
BENCHMARK(BM_SigmaParentMap)->ArgsProduct({{12, 16}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_EssentialTailParity(benchmark::State& state) {
  const Problem p = instantiate(parse_spec(
      "tree: if len == 0 then 2 else 1\n"
      "mu: if len == 0 then 1 else (if len mod 2 == 0 then len else 1)\n"
      "phi: if len == 0 then root else (if len mod 2 == 0 then spine(len^2) else child(root, 0))\n"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(essential_tail(p.phi, p.mu, 40, {4, 16, 64, 256}));
  }
}
BENCHMARK(BM_EssentialTailParity)->Unit(benchmark::kMicrosecond);

void BM_DslEvalWeight(benchmark::State& state) {
  const auto e = dsl::parse_weight("if len == 0 then 1 else (if len mod 2 == 0 then len else 1 / len)");
  const VertexId v = VertexId::spine(17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::eval_weight(e, v));
  }
}
BENCHMARK(BM_DslEvalWeight);

void BM_DslParse(benchmark::State& state) {
  const std::string text =
      "if len == 0 then root else (if len mod 2 == 0 then spine(len^2) else child(root, 0))";
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::parse_map(text));
  }
}
BENCHMARK(BM_DslParse);

}  // namespace

BENCHMARK_MAIN();
