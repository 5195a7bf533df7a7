#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hypflow/geometry.hpp"
#include "hypflow/hyperbolic.hpp"
#include "hypflow/kernels.hpp"
#include "hypflow/radial_curve.hpp"

namespace {

using namespace hypflow;

RadialCurve bench_curve(int n) {
    std::vector<double> rho(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double theta = two_pi * static_cast<double>(j) / static_cast<double>(n);
        rho[static_cast<std::size_t>(j)] =
            1.5 + 0.4 * std::cos(theta) + 0.1 * std::cos(3.0 * theta);
    }
    return RadialCurve::from_samples(std::move(rho));
}

void bench_kernels(benchmark::State& state, kernels::Exec exec) {
    const int n = static_cast<int>(state.range(0));
    const RadialCurve curve = bench_curve(n);
    const Derivatives d = derivatives(curve);
    std::vector<double> g, kappa, ka, speed;
    kernels::set_parallel_cutoff(1);  // benchmark the policy itself at every size
    for (auto _ : state) {
        kernels::arc_element(curve.rho, d.rho_theta, g, exec);
        kernels::curvature(curve.rho, d.rho_theta, d.rho_thetatheta, kappa, exec);
        kernels::power(kappa, -1.0, ka, exec);
        kernels::speed(curve.rho, d.rho_theta, ka, 1.0, speed, exec);
        benchmark::DoNotOptimize(speed.data());
        benchmark::ClobberMemory();
    }
    kernels::set_parallel_cutoff(2048);
    state.SetItemsProcessed(state.iterations() * n);
}

void serial_kernels(benchmark::State& state) { bench_kernels(state, kernels::Exec::Serial); }
void parallel_kernels(benchmark::State& state) { bench_kernels(state, kernels::Exec::Parallel); }

BENCHMARK(serial_kernels)->RangeMultiplier(4)->Range(256, 65536);
BENCHMARK(parallel_kernels)->RangeMultiplier(4)->Range(256, 65536);

}  // namespace

BENCHMARK_MAIN();
