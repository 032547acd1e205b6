#include <benchmark/benchmark.h>

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "specdet/kernels.hpp"

using namespace specdet;

namespace {

std::vector<double> descending(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> ed(1.0);
    std::vector<double> v(n);
    for (auto& x : v)
        x = ed(rng);
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

template <auto Fn>
void BM_psi_nodes(benchmark::State& state)
{
    const GridFn f(descending(static_cast<std::size_t>(state.range(0)), 1));
    for (auto _ : state)
        benchmark::DoNotOptimize(Fn(f));
}

template <auto Fn>
void BM_levels(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = descending(n, 2), b = descending(n, 3);
    auto s = a, p = a;
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = a[i] + b[i];
        p[i] = a[i] * b[i];
    }
    std::sort(s.begin(), s.end(), std::greater<>());
    std::sort(p.begin(), p.end(), std::greater<>());
    for (auto _ : state)
        benchmark::DoNotOptimize(Fn(a, b, s, p));
}

} // namespace

BENCHMARK(BM_psi_nodes<kernels::serial::psi_nodes>)->Name("psi_nodes/serial")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_psi_nodes<kernels::parallel::psi_nodes>)->Name("psi_nodes/parallel")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_levels<kernels::serial::standard_inequality_levels>)
    ->Name("standard_inequality_levels/serial")
    ->RangeMultiplier(2)
    ->Range(64, 512);
BENCHMARK(BM_levels<kernels::parallel::standard_inequality_levels>)
    ->Name("standard_inequality_levels/parallel")
    ->RangeMultiplier(2)
    ->Range(64, 512);

BENCHMARK_MAIN();
