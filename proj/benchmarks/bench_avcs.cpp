#include <benchmark/benchmark.h>

#include "avcs/simulator.hpp"

using namespace avcs;

static void BM_ProjectEquality(benchmark::State& state) {
  const BlockDesign d(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(project_equality(ThetaPair(0.3, 0.7), d));
}
BENCHMARK(BM_ProjectEquality);

static void BM_ProjectLine(benchmark::State& state) {
  const BlockDesign d(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(project_line(0.1, 1.0, ThetaPair(0.1, 0.5), d));
}
BENCHMARK(BM_ProjectLine);

static void BM_ProjectLogOddsCurve(benchmark::State& state) {
  const BlockDesign d(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_log_odds_curve(2.0, ThetaPair(0.2, 0.8), d));
  }
}
BENCHMARK(BM_ProjectLogOddsCurve);

static void BM_EProcessUpdate(benchmark::State& state) {
  const BlockDesign d(1, 1);
  const auto blocks = generate_stream(ThetaPair(0.3, 0.5), d, 1000, 1);
  const EProcessConfig cfg{d, NullSpec::half_plane_le(0.1, 1.0), BetaPrior{}};
  for (auto _ : state) {
    EProcessState s(cfg);
    for (const auto& b : blocks) s = update(s, b);
    benchmark::DoNotOptimize(s.log_e());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(blocks.size()));
}
BENCHMARK(BM_EProcessUpdate);

// Cost of one confidence-sequence step, default grid, per effect size.
static void BM_ConfSeqAdvance(benchmark::State& state) {
  const auto effect = static_cast<EffectSize>(state.range(0));
  ConfSeqConfig cfg;
  cfg.effect = effect;
  cfg.track_instantaneous = true;
  const auto blocks = generate_stream(ThetaPair(0.2, 0.6), cfg.design, 200, 1);
  for (auto _ : state) {
    ConfSeqState s(cfg);
    for (const auto& b : blocks) s.advance(b);
    benchmark::DoNotOptimize(s.alive_count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(blocks.size()));
  state.SetLabel(to_string(effect));
}
BENCHMARK(BM_ConfSeqAdvance)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
