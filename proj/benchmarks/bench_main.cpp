#include <benchmark/benchmark.h>

#include "coordgames/analysis.hpp"
#include "coordgames/enumeration.hpp"
#include "coordgames/montecarlo.hpp"
#include "coordgames/notation.hpp"

using namespace coord;

static void BM_ExactEctCm6Wm(benchmark::State& state) {
  WlcGame g = build_notation("CM(6)");
  for (auto _ : state) benchmark::DoNotOptimize(exact_ect(g, ProtocolSpec::wm()).value);
}
BENCHMARK(BM_ExactEctCm6Wm);

static void BM_ExactEctCm7La(benchmark::State& state) {
  WlcGame g = build_notation("CM(7)");
  for (auto _ : state) benchmark::DoNotOptimize(exact_ect(g, ProtocolSpec::la()).value);
}
BENCHMARK(BM_ExactEctCm7La);

static void BM_EquivPartitionCm7(benchmark::State& state) {
  Stage s = play_round(initial_stage(build_notation("CM(7)")), {0, 8});
  for (auto _ : state) benchmark::DoNotOptimize(equiv_partition(s).blocks.size());
}
BENCHMARK(BM_EquivPartitionCm7);

static void BM_RenamingGroupO3(benchmark::State& state) {
  Stage s = initial_stage(build_notation("O(3)"));
  for (auto _ : state) benchmark::DoNotOptimize(renaming_group(s).size());
}
BENCHMARK(BM_RenamingGroupO3);

static void BM_CanonicalKeyZ3(benchmark::State& state) {
  Stage s = play_round(initial_stage(build_notation("Z(3)")), {0, 5});
  for (auto _ : state) benchmark::DoNotOptimize(canonical_key(s).size());
}
BENCHMARK(BM_CanonicalKeyZ3);

static void BM_Census3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(census_report(3).entries.size());
}
BENCHMARK(BM_Census3);

static void BM_Simulate10kCm3Wm(benchmark::State& state) {
  WlcGame g = build_notation("CM(3)");
  SimOptions opt;
  opt.trials = 10000;
  opt.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(g, ProtocolSpec::wm(), opt).mean_rounds);
}
BENCHMARK(BM_Simulate10kCm3Wm);

BENCHMARK_MAIN();
