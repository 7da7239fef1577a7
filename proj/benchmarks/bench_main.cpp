#include <vector>

#include <benchmark/benchmark.h>

#include "coalesce/amplitude.hpp"
#include "coalesce/oracle.hpp"
#include "coalesce/variational.hpp"

using namespace coalesce;

static void BM_ContactFourierProduct(benchmark::State& state)
{
    TrialWavefunction wf = ProductHydrogenic{2.0};
    double p = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(contact_fourier(wf, p));
}
BENCHMARK(BM_ContactFourierProduct)->Arg(10)->Arg(1000)->Arg(10000);

static void BM_ContactFourierLocalFock(benchmark::State& state)
{
    auto lf = LocalFockForm::with_defaults(2.0, 1.0);
    lf.second_order = {0.3, 0.3, -0.1, 0.2, "bench"};
    TrialWavefunction wf = lf;
    double p = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(contact_fourier(wf, p));
}
BENCHMARK(BM_ContactFourierLocalFock)->Arg(10)->Arg(1000);

static void BM_AssembleMatrices(benchmark::State& state)
{
    std::vector<BasisTerm> basis;
    for (int l = 0; l <= 2; ++l)
        for (int m = 0; m <= 2; m += 2)
            for (int n = 0; n <= 2; ++n)
                basis.push_back({l, m, n});
    basis.resize(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_matrices(basis, 1.8, 2.0));
}
BENCHMARK(BM_AssembleMatrices)->Arg(3)->Arg(9)->Arg(18);

static void BM_F1NBruteforce(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(f1n_bruteforce(2.0, 2.0, 200.0, 1.0));
}
BENCHMARK(BM_F1NBruteforce)->Unit(benchmark::kMillisecond);

static void BM_F1eBruteforce(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(f1e_bruteforce(2.0, 200.0, 1.0));
}
BENCHMARK(BM_F1eBruteforce)->Unit(benchmark::kMillisecond);

static void BM_F0Quadrature(benchmark::State& state)
{
    F0Grid grid;
    grid.nodes_per_panel = 6;
    TrialWavefunction wf = ProductHydrogenic{2.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(f0_bruteforce(wf, 10.0, 1.0, true, grid));
}
BENCHMARK(BM_F0Quadrature)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK_MAIN();
