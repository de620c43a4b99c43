#include <benchmark/benchmark.h>

#include "phg/absorber.hpp"
#include "phg/constructions.hpp"
#include "phg/factor.hpp"
#include "phg/pattern.hpp"
#include "phg/random_models.hpp"

using namespace phg;

namespace {

Hypergraph bench_host(int n, double p, std::uint64_t seed) {
    return sample_binomial(3, n, p, SeededSampler{seed, 0});
}

void BM_sample_binomial(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    SeededSampler s{12, 0};
    for (auto _ : state) {
        auto h = sample_binomial(3, n, 0.3, s);
        benchmark::DoNotOptimize(h.edge_count());
    }
}
BENCHMARK(BM_sample_binomial)->Arg(16)->Arg(24)->Arg(32);

void BM_coupled_chain(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    SeededSampler s{12, 0};
    std::vector<double> ps{0.1, 0.2, 0.3, 0.4, 0.5};
    for (auto _ : state) {
        auto chain = sample_coupled(3, n, ps, s);
        benchmark::DoNotOptimize(chain.back().edge_count());
    }
}
BENCHMARK(BM_coupled_chain)->Arg(16)->Arg(24);

void BM_enumerate_embeddings(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Pattern f = Pattern::complete(3, 4);
    Hypergraph h = bench_host(n, 0.5, 7);
    for (auto _ : state) {
        std::int64_t c = enumerate_embeddings(f, h, [](const Embedding&) { return true; });
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_enumerate_embeddings)->Arg(12)->Arg(16)->Arg(20);

void BM_copy_count(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Pattern f = Pattern::single_edge(3);
    Hypergraph h = bench_host(n, 0.4, 9);
    for (auto _ : state) benchmark::DoNotOptimize(copy_count_statistic(f, h));
}
BENCHMARK(BM_copy_count)->Arg(16)->Arg(24)->Arg(32);

void BM_has_factor(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Pattern f = Pattern::single_edge(3);
    Hypergraph h = bench_host(n, 0.6, 5);
    for (auto _ : state) {
        auto r = has_factor(f, h);
        benchmark::DoNotOptimize(r.status);
    }
}
BENCHMARK(BM_has_factor)->Arg(12)->Arg(18)->Arg(24);

void BM_brute_force_oracle(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Pattern f = Pattern::single_edge(3);
    Hypergraph h = bench_host(n, 0.6, 5);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_oracle(f, h));
}
BENCHMARK(BM_brute_force_oracle)->Arg(9)->Arg(12);

void BM_greedy_tiling(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Pattern f = Pattern::single_edge(3);
    Hypergraph h = bench_host(n, 0.3, 11);
    for (auto _ : state) {
        auto g = greedy_tiling(f, h, 0);
        benchmark::DoNotOptimize(g.tiling.copies.size());
    }
}
BENCHMARK(BM_greedy_tiling)->Arg(24)->Arg(36)->Arg(48);

void BM_split_host(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto host = build_split_host(n, 3, Rational(1, 3));
        benchmark::DoNotOptimize(host.graph.edge_count());
    }
}
BENCHMARK(BM_split_host)->Arg(12)->Arg(24)->Arg(36);

void BM_d_star(benchmark::State& state) {
    Pattern f = Pattern::complete_minus_edge(3, 5);
    for (auto _ : state) {
        auto d = d_star(f);
        benchmark::DoNotOptimize(d.s);
    }
}
BENCHMARK(BM_d_star);

void BM_find_simple_absorber(benchmark::State& state) {
    Hypergraph base = bench_host(15, 0.15, 7);
    auto inst = perturb(base, 0.4, SeededSampler{5, 1});
    Pattern f = Pattern::single_edge(3);
    VertexSet s{{0, 1, 2}};
    for (auto _ : state) {
        auto st = find_simple_absorber(inst, s, f);
        benchmark::DoNotOptimize(st.has_value());
    }
}
BENCHMARK(BM_find_simple_absorber);

void BM_template_verify(benchmark::State& state) {
    int m = static_cast<int>(state.range(0));
    TemplateGraph t = complete_template(m, Rational(1, 2));
    for (auto _ : state) benchmark::DoNotOptimize(template_verify(t));
}
BENCHMARK(BM_template_verify)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
