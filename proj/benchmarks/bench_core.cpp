#include <benchmark/benchmark.h>

#include "nkcp3/curve.hpp"
#include "nkcp3/divisor.hpp"

using namespace nkcp3;

namespace {

CurveExpr sample_curve() { return CurveExpr::weierstrass(parse_expr("z^4 + 2*z"), parse_expr("z^3 - z")); }

void BM_JetProduct(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const SeedJets s = seed_jets(Complex{0.3, 0.2}, order);
  for (auto _ : state) {
    WJet p = s.z * s.zb * s.z + s.z / (WJet::constant(3.0, order) + s.zb);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_JetProduct)->DenseRange(0, 3);

void BM_EvalJet(benchmark::State& state) {
  const CurveExpr c = sample_curve();
  for (auto _ : state) benchmark::DoNotOptimize(eval_jet(c, Complex{0.3, 0.2}, 3));
}
BENCHMARK(BM_EvalJet);

void BM_EvalPartnerJet(benchmark::State& state) {
  const CurveExpr p = CurveExpr::partner(sample_curve());
  for (auto _ : state) benchmark::DoNotOptimize(eval_jet(p, Complex{0.3, 0.2}, 2));
}
BENCHMARK(BM_EvalPartnerJet);

void BM_TorsionResidual(benchmark::State& state) {
  const CurveExpr c = sample_curve();
  for (auto _ : state) benchmark::DoNotOptimize(torsion_residual(c, Complex{0.3, 0.2}));
}
BENCHMARK(BM_TorsionResidual);

void BM_Classify(benchmark::State& state) {
  const CurveExpr p = CurveExpr::partner(sample_curve());
  GridSpec grid;
  grid.samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify(p, grid, 1e-7));
}
BENCHMARK(BM_Classify)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_ChernDegree(benchmark::State& state) {
  const CurveExpr c = sample_curve();
  GridSpec grid;
  for (auto _ : state) benchmark::DoNotOptimize(chern_degree(c, grid));
}
BENCHMARK(BM_ChernDegree)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
