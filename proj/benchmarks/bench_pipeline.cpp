#include <benchmark/benchmark.h>

#include "locspec/kernel.hpp"
#include "locspec/rng.hpp"
#include "locspec/scoring.hpp"
#include "locspec/solver.hpp"

namespace {

locspec::DenseMatrix random_points(std::size_t m, std::size_t n, std::uint64_t seed) {
    locspec::Rng rng(seed);
    locspec::DenseMatrix x(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = rng.next_gaussian();
    return x;
}

void BM_KernelBuildDense(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const locspec::DenseMatrix x = random_points(m, 3, 1);
    locspec::KernelConfig cfg;
    cfg.bandwidth = 4.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(locspec::build_gaussian_kernel(x, cfg));
}
BENCHMARK(BM_KernelBuildDense)->Arg(200)->Arg(800);

void BM_MatrixFreeApply(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const locspec::DenseMatrix x = random_points(m, 9, 2);
    locspec::KernelConfig cfg;
    cfg.bandwidth = 1000.0;
    cfg.mode = locspec::KernelMode::MatrixFree;
    const locspec::KernelGraph g = locspec::build_gaussian_kernel(x, cfg);
    const locspec::NormalizedOperator a = locspec::normalize_symmetric(g);
    const locspec::DenseMatrix block = random_points(m, 25, 3);
    for (auto _ : state) benchmark::DoNotOptimize(a.apply(block));
}
BENCHMARK(BM_MatrixFreeApply)->Arg(500)->Arg(2000);

void BM_QrThin(benchmark::State& state) {
    const locspec::DenseMatrix m = random_points(static_cast<std::size_t>(state.range(0)), 25, 4);
    for (auto _ : state) benchmark::DoNotOptimize(locspec::qr_thin(m));
}
BENCHMARK(BM_QrThin)->Arg(1000)->Arg(4000);

void BM_JacobiEvd(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    locspec::DenseMatrix s = random_points(n, n, 5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (s(i, j) + s(j, i));
            s(i, j) = v;
            s(j, i) = v;
        }
    for (auto _ : state) benchmark::DoNotOptimize(locspec::symmetric_evd_dense(s));
}
BENCHMARK(BM_JacobiEvd)->Arg(25)->Arg(100);

void BM_RandomizedSolve(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const locspec::DenseMatrix x = random_points(m, 3, 6);
    const locspec::KernelGraph g = locspec::build_gaussian_kernel(x, locspec::KernelConfig{});
    const locspec::NormalizedOperator a = locspec::normalize_symmetric(g);
    locspec::SolverConfig cfg;
    cfg.l = 15;
    for (auto _ : state) benchmark::DoNotOptimize(locspec::evd_randomized(a, cfg));
}
BENCHMARK(BM_RandomizedSolve)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
