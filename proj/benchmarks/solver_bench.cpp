#include <benchmark/benchmark.h>

#include <random>

#include "w4/basin.hpp"
#include "w4/linalg.hpp"
#include "w4/problems.hpp"
#include "w4/solvers.hpp"

namespace {

w4::Matrix random_matrix(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    w4::Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng) + (i == j ? 3.0 : 0.0);
    return a;
}

void BM_UdlDecompose(benchmark::State& state) {
    const auto a = random_matrix(static_cast<std::size_t>(state.range(0)), 12345);
    for (auto _ : state) {
        benchmark::DoNotOptimize(w4::udl_decompose(a));
    }
}
BENCHMARK(BM_UdlDecompose)->Arg(2)->Arg(4)->Arg(8);

void BM_NewtonStep(benchmark::State& state) {
    const w4::Problem p = w4::builtin("simple2d");
    const w4::Vector x = {1.0, 4.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(w4::nr_dn_step(p, x, 1.0));
    }
}
BENCHMARK(BM_NewtonStep);

void BM_RelaxationStep(benchmark::State& state) {
    const w4::Problem p = w4::builtin("simple2d");
    const w4::SolverState s{{1.0, 4.0}, {0.1, -0.2}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(w4::w4_udl_step(p, s, 0.5));
    }
}
BENCHMARK(BM_RelaxationStep);

void BM_EigenStep(benchmark::State& state) {
    const w4::Problem p = w4::builtin("fproblem0");
    const w4::SolverState s{{0.5, -1.0}, {0.1, -0.2}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(w4::w4_eigen_step(p, s, 0.5));
    }
}
BENCHMARK(BM_EigenStep);

void BM_BasinRow(benchmark::State& state) {
    const w4::Problem p = w4::builtin("simple2d");
    w4::SolverConfig c;
    c.method = w4::MethodKind::W4Udl;
    c.dtau = 0.5;
    c.max_iter = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(w4::compute_basin(p, c, p.default_domain, 32, 2));
    }
}
BENCHMARK(BM_BasinRow);

}  // namespace

BENCHMARK_MAIN();
