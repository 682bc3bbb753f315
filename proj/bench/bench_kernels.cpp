// Serial reference kernels against their OpenMP variants.  Set OMP_NUM_THREADS
// to compare thread counts; on one core the omp rows measure overhead only.

#include "perronlab/kernels.hpp"
#include "perronlab/random.hpp"
#include "perronlab/verify.hpp"

#include <benchmark/benchmark.h>

using namespace perronlab;

namespace {

CMatrix sample_matrix(Eigen::Index n) {
    auto rng = sampling::trial_rng(1, static_cast<std::uint64_t>(n));
    const RMatrix t = sampling::normalize_radius(sampling::nonnegative(rng, static_cast<std::size_t>(n)));
    return t.cast<cplx>();
}

template <CMatrix (*Fn)(const CMatrix&, const CMatrix&)>
void bm_matmul(benchmark::State& state) {
    const CMatrix a = sample_matrix(state.range(0)), b = sample_matrix(state.range(0) + 1).topLeftCorner(
                                                         state.range(0), state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Fn(a, b));
    state.SetComplexityN(state.range(0));
}

template <CMatrix (*Fn)(const CMatrix&, std::size_t)>
void bm_power(benchmark::State& state) {
    const CMatrix a = sample_matrix(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Fn(a, 64));
}

template <CMatrix (*Fn)(const CMatrix&, std::size_t)>
void bm_geometric(benchmark::State& state) {
    const CMatrix a = sample_matrix(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Fn(a, 200));
}

void bm_suite(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(run_suite("cyclicity", {100, 42, 8}));
}

}  // namespace

BENCHMARK(bm_matmul<kernels::serial::matmul>)->Name("matmul/serial")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(bm_matmul<kernels::omp::matmul>)->Name("matmul/omp")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(bm_power<kernels::serial::power>)->Name("power64/serial")->RangeMultiplier(4)->Range(8, 128);
BENCHMARK(bm_power<kernels::omp::power>)->Name("power64/omp")->RangeMultiplier(4)->Range(8, 128);
BENCHMARK(bm_geometric<kernels::serial::geometric_sum>)->Name("geometric200/serial")->RangeMultiplier(4)->Range(8, 64);
BENCHMARK(bm_geometric<kernels::omp::geometric_sum>)->Name("geometric200/omp")->RangeMultiplier(4)->Range(8, 64);
BENCHMARK(bm_suite)->Name("suite/cyclicity_100")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
