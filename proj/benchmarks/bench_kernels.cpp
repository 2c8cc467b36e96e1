#include <benchmark/benchmark.h>

#include <random>

#include "strided/strided.hpp"

namespace {

using namespace strided;
namespace sp = strided::pipelines;

void report_allocations(benchmark::State& state, const CounterReport& r) {
    state.counters["buffers"] = static_cast<double>(r.buffers_allocated);
    state.counters["bytes"] = static_cast<double>(r.bytes_allocated);
    state.counters["scalar_ops"] = static_cast<double>(r.scalar_ops);
}

template <sp::EvalStrategy S>
void BM_EvaluateF(benchmark::State& state) {
    const ArrayView x = arange(0, static_cast<double>(state.range(0)), 1, DType::float64());
    CounterReport last;
    for (auto _ : state) {
        CounterSession session;
        benchmark::DoNotOptimize(sp::evaluate_f(x, S).data());
        last = session.report();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    report_allocations(state, last);
}
BENCHMARK(BM_EvaluateF<sp::EvalStrategy::per_element>)->Arg(100000);
BENCHMARK(BM_EvaluateF<sp::EvalStrategy::vectorized>)->Arg(100000);
BENCHMARK(BM_EvaluateF<sp::EvalStrategy::inplace>)->Arg(100000);

template <sp::GridMethod M>
void BM_DistanceGrid(benchmark::State& state) {
    sp::GridReport report;
    for (auto _ : state) {
        auto [r, rep] = sp::distance_grid(state.range(0), M);
        benchmark::DoNotOptimize(r.data());
        report = rep;
    }
    state.counters["buffers"] = static_cast<double>(report.buffers_allocated);
    state.counters["bytes"] = static_cast<double>(report.bytes_allocated);
    state.counters["scalar_ops"] = static_cast<double>(report.scalar_ops);
}
BENCHMARK(BM_DistanceGrid<sp::GridMethod::dense>)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceGrid<sp::GridMethod::broadcast>)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ProjectPoints(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(0.1, 1.0);
    std::vector<double> pts(static_cast<std::size_t>(n * 3));
    for (auto& p : pts) p = d(rng);
    const ArrayView points = from_values(pts, {n, 3});
    const ArrayView camera = from_values(std::vector<double>{500, 0, 320, 0, 500, 240, 0, 0, 1}, {3, 3});
    for (auto _ : state) benchmark::DoNotOptimize(sp::project_points(points, camera).data());
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ProjectPoints)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_BinaryBroadcast(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const ArrayView col = arange(0, static_cast<double>(n), 1, DType::float64());
    const ArrayView a = reshape(col, {n, 1});
    for (auto _ : state) benchmark::DoNotOptimize(elementwise_binary(BinaryOp::add, a, col).data());
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_BinaryBroadcast)->Arg(256)->Arg(1024);

void BM_Dot(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const ArrayView a = reshape(arange(0, static_cast<double>(n * n), 1, DType::float64()), {n, n});
    for (auto _ : state) benchmark::DoNotOptimize(dot(a, a).data());
    state.SetItemsProcessed(state.iterations() * 2 * n * n * n);
}
BENCHMARK(BM_Dot)->Arg(16)->Arg(64);

}  // namespace
BENCHMARK_MAIN();
