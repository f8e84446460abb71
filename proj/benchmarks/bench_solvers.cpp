#include <benchmark/benchmark.h>

#include "coordmp/approx.hpp"
#include "coordmp/generate.hpp"
#include "coordmp/hardness.hpp"
#include "coordmp/havenswap.hpp"
#include "coordmp/oracle.hpp"
#include "coordmp/structure.hpp"
#include "coordmp/twdp.hpp"

using namespace coordmp;

namespace {

Instance random_instance(std::size_t n, std::size_t k, std::uint64_t seed) {
    GenParams p;
    p.kind = GraphKind::random;
    p.n = n;
    p.robots = k;
    p.free_robots = k / 2;
    p.seed = seed;
    return generate(p);
}

Instance grid_instance(std::size_t w, std::size_t k) {
    GenParams p;
    p.kind = GraphKind::grid;
    p.w = w;
    p.h = 3;
    p.robots = k;
    p.seed = 1;
    return generate(p);
}

void BM_Exact(benchmark::State& state) {
    Instance in = random_instance(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(in));
}
BENCHMARK(BM_Exact)->Args({8, 2})->Args({12, 2})->Args({12, 3})->Unit(benchmark::kMillisecond);

void BM_Critical(benchmark::State& state) {
    GenParams p;
    p.kind = GraphKind::path;
    p.n = static_cast<std::size_t>(state.range(0));
    p.robots = 1;
    p.seed = 2;
    Instance in = generate(p);
    for (auto _ : state) benchmark::DoNotOptimize(solve_critical(in));
}
BENCHMARK(BM_Critical)->Arg(20)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_Approx(benchmark::State& state) {
    Instance in = grid_instance(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(approximate(in));
}
BENCHMARK(BM_Approx)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_FindNice(benchmark::State& state) {
    Graph g = grid_instance(static_cast<std::size_t>(state.range(0)), 1).graph();
    for (auto _ : state) benchmark::DoNotOptimize(find_all_nice(g, 2));
}
BENCHMARK(BM_FindNice)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_HavenSwap(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    std::vector<Edge> e;
    Vertex next = 1;
    for (int arm = 0; arm < 3; ++arm) {
        Vertex prev = 0;
        for (int i = 0; i < k + 1; ++i) {
            e.emplace_back(prev, next);
            prev = next++;
        }
    }
    Graph g(static_cast<std::size_t>(next), e);
    Haven h = *is_nice(g, 0, k);
    HavenConfiguration from, to;
    for (int r = 0; r < k; ++r) {
        from.placement[r] = h.members[static_cast<std::size_t>(r)];
        to.placement[r] = h.members[h.members.size() - 1 - static_cast<std::size_t>(r)];
    }
    for (auto _ : state) benchmark::DoNotOptimize(haven_swap(g, h, from, to));
}
BENCHMARK(BM_HavenSwap)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_Twdp(benchmark::State& state) {
    Instance in = random_instance(static_cast<std::size_t>(state.range(0)), 2, 5);
    for (auto _ : state) benchmark::DoNotOptimize(solve_twdp(in));
}
BENCHMARK(BM_Twdp)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_ReduceTriangle(benchmark::State& state) {
    MulticoloredGraph tri{{{"a"}, {"b"}, {"c"}}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}};
    for (auto _ : state) benchmark::DoNotOptimize(reduce_mcc(tri));
}
BENCHMARK(BM_ReduceTriangle)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
