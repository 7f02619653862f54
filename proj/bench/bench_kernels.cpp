// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "drawable/constructions.hpp"
#include "drawable/measure.hpp"
#include "drawable/sampler.hpp"
#include "drawable/schedules.hpp"

using namespace drawable;

namespace {

const ProbSeq& bench_seq() {
  static const ProbSeq s = ProbSeq::parse("interleave(geom:1/2,1-(geom:1/2))");
  return s;
}

const CylinderConstraint& bench_cylinder() {
  static const CylinderConstraint c{{0, true}, {1, false}, {2, true}, {5, false}, {8, true}};
  return c;
}

void BM_CylinderParallel(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(cylinder_frequency(bench_seq(), bench_cylinder(), st.range(0), 7));
}

void BM_CylinderSerial(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(
        cylinder_frequency_serial(bench_seq(), bench_cylinder(), st.range(0), 7));
}

const EdgeSchedule& bench_schedule() {
  static const EdgeSchedule s = replicate_schedule(GraphOracle::canonical_ufin(4), 64);
  return s;
}

HarnessOptions bench_options() {
  HarnessOptions o;
  o.analyzers = {Analyzer::Deviations, Analyzer::Components, Analyzer::Degrees};
  return o;
}

void BM_HarnessParallel(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(trial_harness(bench_schedule(), 64, st.range(0), bench_options(), 7));
}

void BM_HarnessSerial(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(
        trial_harness_serial(bench_schedule(), 64, st.range(0), bench_options(), 7));
}

void BM_RamseyParallel(benchmark::State& st) {
  const Graph h = path_graph(3);
  const Graph x = ramsey_graph(h, 2);
  for (auto _ : st) benchmark::DoNotOptimize(verify_ramsey(x, h, 2));
}

void BM_RamseySerial(benchmark::State& st) {
  const Graph h = path_graph(3);
  const Graph x = ramsey_graph(h, 2);
  for (auto _ : st) benchmark::DoNotOptimize(verify_ramsey_serial(x, h, 2));
}

}  // namespace

BENCHMARK(BM_CylinderParallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CylinderSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HarnessParallel)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HarnessSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RamseyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RamseySerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
