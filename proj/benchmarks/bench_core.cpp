#include <benchmark/benchmark.h>

#include "distreg/dataset.hpp"
#include "distreg/efficiency.hpp"
#include "distreg/estimators.hpp"
#include "distreg/fixed_point.hpp"
#include "distreg/multishot.hpp"

namespace {

using namespace distreg;

Dataset make_data(int n, int p, int k, PartitionPlan& plan) {
    ProblemSpec spec;
    spec.n = n;
    spec.p = p;
    plan = make_partition(n, p, k, PartitionMode::Equal);
    return sample_dataset(spec, ScaleDistribution::point_mass(1.0),
                          CovarianceSpec::identity(), plan, 42);
}

void BM_solve_e_two_point(benchmark::State& state) {
    const ScaleDistribution g = ScaleDistribution::two_point(0.5, 1.0, 0.5, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_e(0.1, g).e);
}
BENCHMARK(BM_solve_e_two_point);

void BM_solve_e_uniform(benchmark::State& state) {
    const ScaleDistribution g = ScaleDistribution::uniform(1e-6, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_e(0.1, g).e);
}
BENCHMARK(BM_solve_e_uniform);

void BM_sample_dataset(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ProblemSpec spec;
    spec.n = n;
    spec.p = 100;
    const PartitionPlan plan = make_partition(n, 100, 1, PartitionMode::Equal);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_dataset(spec, ScaleDistribution::point_mass(1.0),
                                                CovarianceSpec::identity(), plan, ++seed));
    }
}
BENCHMARK(BM_sample_dataset)->Arg(2000)->Arg(10000);

void BM_distributed_fit(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    PartitionPlan plan;
    const Dataset ds = make_data(10000, 100, k, plan);
    for (auto _ : state) benchmark::DoNotOptimize(distributed_fit_optimal(ds, plan).beta_hat);
}
BENCHMARK(BM_distributed_fit)->Arg(5)->Arg(20);

void BM_re_finite(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    PartitionPlan plan;
    const Dataset ds = make_data(10000, 100, k, plan);
    for (auto _ : state) {
        BlockGrams grams(ds, plan);
        benchmark::DoNotOptimize(re_finite(grams));
    }
}
BENCHMARK(BM_re_finite)->Arg(5)->Arg(20);

void BM_iteravg_round(benchmark::State& state) {
    PartitionPlan plan;
    const Dataset ds = make_data(10000, 100, 20, plan);
    AlgorithmConfig cfg;
    cfg.method = Method::IterAvg;
    cfg.rhos = {1.0};
    cfg.max_rounds = 10;
    cfg.tol = 0.0;
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg, ds, plan).rounds.size());
}
BENCHMARK(BM_iteravg_round);

}  // namespace

BENCHMARK_MAIN();
