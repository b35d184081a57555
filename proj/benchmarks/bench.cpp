#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "madc/bounds.hpp"
#include "madc/combin.hpp"
#include "madc/download.hpp"
#include "madc/engine.hpp"
#include "madc/model.hpp"
#include "madc/sweep.hpp"

namespace {

// One fully built single-level run, reused across iterations.
struct Fixture {
  madc::ProblemInstance instance;
  madc::Topology topology;
  madc::FileAssignment files;
  madc::ReduceAssignment reduce;
  madc::IVStore store;

  madc::Simulation sim() const { return {instance, topology, files, reduce, store}; }
};

Fixture make_fixture(int lambda, int alpha, int r) {
  madc::ProblemInstance inst = madc::build_instance(lambda, alpha, r, {}, {}, {}, 1);
  madc::Topology topo = madc::build_topology(inst);
  madc::FileAssignment files = madc::assign_files_single(inst);
  madc::ReduceAssignment reduce = madc::assign_reduce_functions(inst, topo);
  madc::IVStore store = madc::run_map(inst, files);
  return {std::move(inst), std::move(topo), std::move(files), std::move(reduce),
          std::move(store)};
}

void BM_Binomial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(madc::binom(n, n / 2));
  }
}
BENCHMARK(BM_Binomial)->Arg(32)->Arg(128)->Arg(512);

void BM_SubsetRankRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = n / 2;
  const std::uint64_t count = madc::binom_u64(n, k);
  std::uint64_t rank = 0;
  for (auto _ : state) {
    const madc::SubsetId subset = madc::subset_unrank(rank, n, k);
    benchmark::DoNotOptimize(madc::subset_rank(subset.members, n));
    rank = (rank + 1) % count;
  }
}
BENCHMARK(BM_SubsetRankRoundTrip)->Arg(12)->Arg(24);

void BM_MapPhase(benchmark::State& state) {
  const Fixture f = make_fixture(6, 2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(madc::run_map(f.instance, f.files));
  }
}
BENCHMARK(BM_MapPhase);

void BM_ShufflePhase(benchmark::State& state) {
  const Fixture f = make_fixture(6, 2, 2);
  const madc::Simulation sim = f.sim();
  for (auto _ : state) {
    const madc::Transcript transcript = madc::run_shuffle(sim);
    benchmark::DoNotOptimize(transcript.total_bits);
  }
}
BENCHMARK(BM_ShufflePhase);

void BM_DecodeOneReducer(benchmark::State& state) {
  const Fixture f = make_fixture(6, 2, 2);
  const madc::Simulation sim = f.sim();
  const madc::Transcript transcript = madc::run_shuffle(sim);
  for (auto _ : state) {
    const madc::RecoveredIVs got = madc::decode(sim, 0, transcript);
    benchmark::DoNotOptimize(got.data.data());
  }
}
BENCHMARK(BM_DecodeOneReducer);

void BM_DeliveryPlan(benchmark::State& state) {
  const Fixture f = make_fixture(8, 2, 3);
  for (auto _ : state) {
    const madc::DeliveryPlan plan = madc::plan_delivery(f.instance, f.files, f.topology);
    benchmark::DoNotOptimize(plan.total_bits);
  }
}
BENCHMARK(BM_DeliveryPlan);

void BM_LevelOptimiser(benchmark::State& state) {
  const int lambda = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        madc::lp_solve(lambda, 2, madc::Rational(lambda / 2)).objective);
  }
}
BENCHMARK(BM_LevelOptimiser)->Arg(8)->Arg(16)->Arg(32);

void BM_SweepGrid(benchmark::State& state) {
  madc::SweepSpec spec;
  spec.lambda_min = 2;
  spec.lambda_max = static_cast<int>(state.range(0));
  spec.mode = madc::RunMode::Both;
  for (auto _ : state) {
    benchmark::DoNotOptimize(madc::run_sweep(spec).size());
  }
}
BENCHMARK(BM_SweepGrid)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
