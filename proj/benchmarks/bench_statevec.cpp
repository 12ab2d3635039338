#include <benchmark/benchmark.h>

#include "entsim/cluster.hpp"
#include "entsim/statevec.hpp"

namespace {

void BM_apply_h(benchmark::State& state) {
    const int qubits = static_cast<int>(state.range(0));
    entsim::PureState s = entsim::plus_state(qubits);
    for (auto _ : state) {
        s.apply_h(qubits / 2);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << qubits));
}
BENCHMARK(BM_apply_h)->Arg(10)->Arg(16)->Arg(20);

void BM_apply_cz(benchmark::State& state) {
    const int qubits = static_cast<int>(state.range(0));
    entsim::PureState s = entsim::plus_state(qubits);
    for (auto _ : state) {
        s.apply_cz(0, qubits - 1);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << qubits));
}
BENCHMARK(BM_apply_cz)->Arg(10)->Arg(16)->Arg(20);

void BM_measure_b_alpha(benchmark::State& state) {
    const int qubits = static_cast<int>(state.range(0));
    const entsim::PureState s = entsim::plus_state(qubits);
    for (auto _ : state) {
        auto out = entsim::measure_b_alpha(s, 0, 0.7, entsim::OutcomeMode::forced(0));
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_measure_b_alpha)->Arg(10)->Arg(16)->Arg(20);

void BM_linear_cluster(benchmark::State& state) {
    const int length = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = entsim::linear_cluster(length);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_linear_cluster)->Arg(6)->Arg(12)->Arg(18);

void BM_stabilizer_check(benchmark::State& state) {
    const int length = static_cast<int>(state.range(0));
    const entsim::Graph g = entsim::Graph::path(length);
    const entsim::PureState s = entsim::graph_state(g);
    for (auto _ : state) {
        auto report = entsim::stabilizer_check(s, g);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_stabilizer_check)->Arg(6)->Arg(10)->Arg(14);

} // namespace

BENCHMARK_MAIN();
