#include <benchmark/benchmark.h>

#include "hgl/cliques.hpp"
#include "hgl/graphs.hpp"

using namespace hgl;

static void BM_FieldMul(benchmark::State& state) {
    gf::Field F(static_cast<unsigned>(state.range(0)));
    gf::Fel acc = 1;
    for (auto _ : state) {
        for (gf::Fel x = 1; x < F.q2(); ++x) acc = F.mul(acc, x) | 1;
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(9)->Arg(16);

static void BM_Det(benchmark::State& state) {
    gf::Field F(4);
    unsigned n = static_cast<unsigned>(state.range(0));
    auto verts = mat::enumerate_hermitian(F, n, true);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mat::det(F, verts[i]));
        i = (i + 1) % verts.size();
    }
}
BENCHMARK(BM_Det)->Arg(2);

static void BM_BuildHgl2(benchmark::State& state) {
    gf::Field F(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        auto G = graphs::build_hgl(F, 2);
        benchmark::DoNotOptimize(G.num_edges());
    }
}
BENCHMARK(BM_BuildHgl2)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_CliqueCounts(benchmark::State& state) {
    gf::Field F(static_cast<unsigned>(state.range(0)));
    auto verts = mat::enumerate_hermitian(F, 2, true);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cliques::clique_counts(F, verts[i]));
        i = (i + 1) % verts.size();
    }
}
BENCHMARK(BM_CliqueCounts)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
