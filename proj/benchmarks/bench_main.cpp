#include <benchmark/benchmark.h>

#include "tgreg/tgreg.hpp"

using namespace tgreg;

static void BM_BlurForward(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto op = make_gaussian_blur(side, 4.0, 16);
  Rng rng(1);
  const Vector x = rng.normal_vector(side * side);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(side * side));
}
BENCHMARK(BM_BlurForward)->Arg(64)->Arg(128)->Arg(256);

static void BM_Truncate(benchmark::State& state) {
  Rng rng(2);
  const Vector d = rng.normal_vector(4096);
  const TruncationRule rules[] = {AlphaPercent{10}, TopK{410}, MinCombo{410, 10}};
  const auto& rule = rules[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(apply_rule(d, rule));
  state.SetLabel(describe(rule));
}
BENCHMARK(BM_Truncate)->DenseRange(0, 2);

static void BM_TgIteration(benchmark::State& state) {
  DeblurSpec spec;
  spec.side = static_cast<std::size_t>(state.range(0));
  const auto p = make_deblur_problem(spec);
  RunOptions opts;
  opts.constraint = BoundConstraint::nonnegative();
  opts.stopping = MaxIter{10};
  opts.stop_on_stall = false;
  for (auto _ : state) benchmark::DoNotOptimize(tg_descent(p.op, p.b_noisy, AlphaPercent{10}, ExactLineSearch{}, opts));
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_TgIteration)->Arg(64)->Arg(128);

static void BM_DeblurToDiscrepancy(benchmark::State& state) {
  const auto p = make_deblur_problem(DeblurSpec{});
  RunOptions opts;
  opts.constraint = BoundConstraint::nonnegative();
  opts.stopping = Discrepancy{p.delta, 1.01, 5000};
  for (auto _ : state) benchmark::DoNotOptimize(tg_descent(p.op, p.b_noisy, AlphaPercent{40}, ExactLineSearch{}, opts));
}
BENCHMARK(BM_DeblurToDiscrepancy)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
