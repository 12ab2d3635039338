#include <benchmark/benchmark.h>

#include "entsim/commcomplex.hpp"
#include "entsim/mbqc.hpp"
#include "entsim/network.hpp"

namespace {

void BM_verify_pattern(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    std::vector<double> angles(k);
    entsim::Rng rng(3);
    for (double& a : angles) a = 6.28318530717958647692 * rng.next_unit();
    const entsim::Pattern p{angles};
    for (auto _ : state) {
        auto report = entsim::verify_pattern(p);
        benchmark::DoNotOptimize(report);
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << k));
}
BENCHMARK(BM_verify_pattern)->Arg(2)->Arg(4)->Arg(6);

void BM_classical_bruteforce(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto result = entsim::classical_bruteforce(n);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_classical_bruteforce)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_monte_carlo(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto result = entsim::monte_carlo(n, entsim::NoiseParams{0.9, 0.8}, 10000, 0);
        benchmark::DoNotOptimize(result);
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_monte_carlo)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_entanglement_swap(benchmark::State& state) {
    entsim::Rng rng(9);
    for (auto _ : state) {
        auto result = entsim::entanglement_swap(entsim::OutcomeMode::sample(rng));
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_entanglement_swap);

void BM_ghz_merge(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    entsim::Rng rng(11);
    for (auto _ : state) {
        auto result = entsim::ghz_merge(n, n, entsim::OutcomeMode::sample(rng));
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_ghz_merge)->Arg(3)->Arg(5)->Arg(7);

} // namespace

BENCHMARK_MAIN();
