#include <benchmark/benchmark.h>

#include "pidyn/cohesion.hpp"
#include "pidyn/dynamics.hpp"
#include "pidyn/network.hpp"
#include "pidyn/sequences.hpp"

using namespace pidyn;

namespace {

InfluenceNetwork bench_network(int n, double p) {
    Rng rng(42);
    return erdos_renyi(n, p, rng);
}

OpinionState bench_state(const OpinionDomain& dom, int n) {
    Rng rng(43);
    OpinionState x(n);
    for (auto& v : x) v = dom.lo + rng.uniform_int(dom.size());
    return x;
}

void BM_step(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto net = bench_network(n, 0.1);
    OpinionDomain dom{1, 30, 15};
    auto x = bench_state(dom, n);
    Rng rng(7);
    for (auto _ : state) {
        auto ev = step(net, dom, x, rng);
        benchmark::DoNotOptimize(ev);
    }
}
BENCHMARK(BM_step)->Arg(50)->Arg(100)->Arg(400);

void BM_equilibrium_check(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto net = bench_network(n, 0.1);
    OpinionDomain dom{1, 30, 15};
    auto x = bench_state(dom, n);
    for (auto _ : state) {
        bool eq = is_equilibrium(net, dom, x);
        benchmark::DoNotOptimize(eq);
    }
}
BENCHMARK(BM_equilibrium_check)->Arg(50)->Arg(100)->Arg(400);

void BM_simulate_to_convergence(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto net = bench_network(n, 0.1);
    OpinionDomain dom{1, 30, 15};
    auto x0 = bench_state(dom, n);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng(Rng::derive_seed(1, seed++));
        auto res = simulate(net, dom, x0, rng, 1000000);
        benchmark::DoNotOptimize(res.steps);
    }
}
BENCHMARK(BM_simulate_to_convergence)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_minimal_cohesive_enumeration(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto net = bench_network(n, 0.3);
    for (auto _ : state) {
        auto fam = enumerate_minimal_strictly_cohesive(net);
        benchmark::DoNotOptimize(fam.size());
    }
}
BENCHMARK(BM_minimal_cohesive_enumeration)->Arg(10)->Arg(14)->Arg(18)
    ->Unit(benchmark::kMillisecond);

void BM_equilibrium_sequence(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto net = bench_network(n, 0.1);
    OpinionDomain dom{-5, 5, 0};
    auto x0 = bench_state(dom, n);
    for (auto _ : state) {
        auto seq = construct_equilibrium_sequence(net, dom, x0);
        benchmark::DoNotOptimize(seq.size());
    }
}
BENCHMARK(BM_equilibrium_sequence)->Arg(50)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
