#include <benchmark/benchmark.h>

#include "cwcsp/classifier.hpp"
#include "cwcsp/monge.hpp"
#include "cwcsp/reduction.hpp"

using namespace cwcsp;

namespace {

Language intro_language() {
    Language lang(2);
    lang.add("F", WeightFunction(2, 2, {1, 1, 1, 2}));
    return lang;
}

Formula path(int n) {
    Formula f;
    f.num_free_vars = n;
    for (int i = 0; i + 1 < n; ++i) f.atoms.push_back({"F", {i, i + 1}});
    return f;
}

void BM_PartitionFunctionPath(benchmark::State& state) {
    Language lang = intro_language();
    Formula inst = path(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(partition_function(inst, lang));
}
BENCHMARK(BM_PartitionFunctionPath)->Arg(8)->Arg(12)->Arg(16);

void BM_StpMjnSearch(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    std::vector<CostFunction> lang{weight_to_cost(builtin::neq(d))};
    for (auto _ : state) benchmark::DoNotOptimize(find_stp_mjn(lang, d));
}
BENCHMARK(BM_StpMjnSearch)->Arg(2)->Arg(3);

void BM_BinaryClone(benchmark::State& state) {
    Language lang(2);
    lang.add("IMP", builtin::imp());
    CloneBounds bounds{static_cast<int>(state.range(0)), 1, true, 5'000'000};
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_binary_clone(lang, bounds));
}
BENCHMARK(BM_BinaryClone)->Arg(1)->Arg(2)->Arg(3);

void BM_MongeDecompose(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    std::vector<MongeTerm> terms;
    for (int a = 1; a < n; ++a)
        for (int b = 0; b + 1 < n; ++b) terms.push_back({MongeOrientation::geq_leq, a, b, Rational(1, a + b + 2)});
    RationalMatrix m = monge_product(n, n, terms);
    for (auto _ : state) benchmark::DoNotOptimize(monge_decompose(m));
}
BENCHMARK(BM_MongeDecompose)->Arg(3)->Arg(5)->Arg(8);

void BM_ClassifyImp(benchmark::State& state) {
    Language lang(2);
    lang.add("IMP", builtin::imp());
    ClassifyOptions options;
    options.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(classify(lang, options));
}
BENCHMARK(BM_ClassifyImp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
