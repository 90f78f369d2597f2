#include <benchmark/benchmark.h>

#include "mapfpp/cvs.hpp"
#include "mapfpp/distances.hpp"
#include "mapfpp/hull.hpp"
#include "mapfpp/lhpq.hpp"
#include "mapfpp/skeleton.hpp"
#include "mapfpp/tutte.hpp"

using namespace mapfpp;

static void SampleQuadrangulation(benchmark::State& st) {
    Rng rng(1);
    for (auto _ : st) benchmark::DoNotOptimize(sample_pointed_quadrangulation(static_cast<int>(st.range(0)), rng));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(SampleQuadrangulation)->RangeMultiplier(10)->Range(1000, 100000)->Complexity();

static void Bfs(benchmark::State& st) {
    Rng rng(2);
    auto pq = sample_pointed_quadrangulation(static_cast<int>(st.range(0)), rng);
    Adjacency g(pq.map);
    std::vector<int> dist, queue;
    int src[1] = {0};
    for (auto _ : st) {
        bfs(g, src, dist, queue);
        benchmark::DoNotOptimize(dist.data());
    }
}
BENCHMARK(Bfs)->RangeMultiplier(10)->Range(1000, 100000);

static void Dijkstra(benchmark::State& st) {
    Rng rng(3);
    auto pq = sample_pointed_quadrangulation(static_cast<int>(st.range(0)), rng);
    Adjacency g(pq.map);
    auto w = WeightSpec::parse("uniform:1:2").sample(pq.map.edge_count(), rng);
    std::vector<double> dist;
    int src[1] = {0};
    for (auto _ : st) {
        dijkstra(g, w.weight, src, dist);
        benchmark::DoNotOptimize(dist.data());
    }
}
BENCHMARK(Dijkstra)->RangeMultiplier(10)->Range(1000, 100000);

static void TutteForward(benchmark::State& st) {
    Rng rng(4);
    auto pq = sample_pointed_quadrangulation(static_cast<int>(st.range(0)), rng);
    for (auto _ : st) benchmark::DoNotOptimize(tutte_forward(pq.map));
}
BENCHMARK(TutteForward)->RangeMultiplier(10)->Range(1000, 100000);

static void SkeletonDecompose(benchmark::State& st) {
    Rng rng(5);
    std::optional<CylinderQuad> c;
    while (!c) {
        auto pq = sample_pointed_quadrangulation(20000, rng);
        int t = *pq.map.marked();
        if (root_distances(pq.map)[t] >= 8) c = as_cylinder(truncated_hull(pq.map, t, 6));
    }
    for (auto _ : st) benchmark::DoNotOptimize(skeleton_decompose(*c));
}
BENCHMARK(SkeletonDecompose);

static void HalfPlaneDistanceToLine(benchmark::State& st) {
    std::uint64_t seed = 6;
    LhpqOptions o;
    o.tutte_graph = true;
    for (auto _ : st) {
        Lhpq m(seed++, o);
        benchmark::DoNotOptimize(m.distance_to_line(m.root(), static_cast<int>(st.range(0)), Lhpq::Graph::Tutte));
    }
}
BENCHMARK(HalfPlaneDistanceToLine)->Arg(20)->Arg(50)->Arg(100);
BENCHMARK_MAIN();
