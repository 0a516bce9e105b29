#include <benchmark/benchmark.h>

#include "hornlog/engine.hpp"
#include "hornlog/parser.hpp"
#include "hornlog/transform.hpp"

using namespace hornlog;

namespace {

const Theory& transitivity() {
    static const Theory t = parse_theory("sort V; pred E: V*V; rule E(u,v) & E(v,w) => E(u,w);");
    return t;
}

const Theory& preorder() {
    static const Theory t = parse_theory(
        "sort V; pred E: V*V;"
        "rule E(u,v) & E(v,w) => E(u,w);"
        "rule E(u,v) & E(v,u) => u = v;");
    return t;
}

StructurePtr chain(SignaturePtr sig, std::uint32_t n, bool cycle) {
    Structure x(std::move(sig));
    for (std::uint32_t i = 0; i < n; ++i) x.add_element(0);
    for (std::uint32_t i = 0; i + 1 < n; ++i) x.add_tuple(0, Tuple{i, i + 1});
    if (cycle && n > 1) x.add_tuple(0, Tuple{n - 1, 0});
    return share(std::move(x));
}

void closure(benchmark::State& state, Strategy strategy) {
    const auto& t = transitivity();
    auto x = chain(t.sig, static_cast<std::uint32_t>(state.range(0)), false);
    EvalConfig cfg;
    cfg.strategy = strategy;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(t, x, cfg));
    state.SetComplexityN(state.range(0));
}

void BM_ClosureNaive(benchmark::State& state) { closure(state, Strategy::Naive); }
void BM_ClosureSeminaive(benchmark::State& state) { closure(state, Strategy::Seminaive); }

BENCHMARK(BM_ClosureNaive)->RangeMultiplier(2)->Range(8, 64)->Complexity();
BENCHMARK(BM_ClosureSeminaive)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_CycleCollapseDirect(benchmark::State& state) {
    const auto& t = preorder();
    auto x = chain(t.sig, static_cast<std::uint32_t>(state.range(0)), true);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(t, x));
}

void cycle_setoid(benchmark::State& state, Theory (*transform)(const Theory&)) {
    const auto s = transform(preorder());
    auto x = share(diagonal_embed(*chain(preorder().sig, static_cast<std::uint32_t>(state.range(0)), true), s.sig));
    for (auto _ : state) benchmark::DoNotOptimize(quotient_model(*evaluate(s, x).model, preorder().sig));
}

void BM_CycleCollapseSetoid(benchmark::State& state) { cycle_setoid(state, setoid_transform); }
void BM_CycleCollapseSparseSetoid(benchmark::State& state) { cycle_setoid(state, sparse_setoid_transform); }

BENCHMARK(BM_CycleCollapseDirect)->RangeMultiplier(2)->Range(4, 32);
BENCHMARK(BM_CycleCollapseSetoid)->RangeMultiplier(2)->Range(4, 16);
BENCHMARK(BM_CycleCollapseSparseSetoid)->RangeMultiplier(2)->Range(4, 16);

}  // namespace

BENCHMARK_MAIN();
