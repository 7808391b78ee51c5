#include <designlat/applications.hpp>
#include <designlat/builtins.hpp>
#include <designlat/lattice.hpp>
#include <designlat/linalg.hpp>
#include <designlat/solver.hpp>

#include <benchmark/benchmark.h>

using namespace designlat;

namespace {

Matrix random_matrix(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    Matrix z(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            z(i, j) = rng.between(-9, 9);
    return z;
}

void BM_DiagonalForm(benchmark::State& state)
{
    auto z = random_matrix(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(diagonal_form(z));
}
BENCHMARK(BM_DiagonalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SolveSteinerTriples(benchmark::State& state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    auto inst = build_nonpartite(Hypergraph::complete(3, 2), Hypergraph::complete(n, 2));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_exact(inst.gamma, inst.phi, inst.target));
}
BENCHMARK(BM_SolveSteinerTriples)->Arg(7)->Arg(9)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_CountLatinSquares(benchmark::State& state)
{
    auto inst = build_latin(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(count_exact(inst.gamma, inst.phi, inst.target));
}
BENCHMARK(BM_CountLatinSquares)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LatticeTryst(benchmark::State& state)
{
    auto inst = build_tryst(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(lattice_member_L(inst.gamma, inst.target, LatticeMethod::Sharp));
}
BENCHMARK(BM_LatticeTryst)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LatticeMethods(benchmark::State& state)
{
    auto inst = build_builtin("twisted-octahedron");
    auto method = state.range(0) == 0 ? LatticeMethod::Sharp : LatticeMethod::Shadow;
    for (auto _ : state)
        benchmark::DoNotOptimize(lattice_member_L(inst.gamma, inst.target, method));
}
BENCHMARK(BM_LatticeMethods)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Nibble(benchmark::State& state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    auto inst = build_nonpartite(Hypergraph::complete(3, 2), Hypergraph::complete(n, 2));
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(nibble_greedy(inst.gamma, inst.phi, inst.target, ++seed));
}
BENCHMARK(BM_Nibble)->Arg(15)->Arg(27)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
