#include <benchmark/benchmark.h>

#include "qfock/chevalley.hpp"
#include "qfock/exprlang.hpp"
#include "qfock/operators.hpp"
#include "qfock/relations.hpp"

using namespace qfock;

namespace {

void BM_LaurentMultiply(benchmark::State& state) {
    const LaurentPoly a = q_factorial(8);
    const LaurentPoly b = q_factorial(7);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_LaurentMultiply);

void BM_LaurentDivideExact(benchmark::State& state) {
    const LaurentPoly num = q_factorial(8);
    const LaurentPoly den = q_factorial(4);
    for (auto _ : state) benchmark::DoNotOptimize(num.divided_exactly_by(den));
}
BENCHMARK(BM_LaurentDivideExact);

void BM_BuildGenerators(benchmark::State& state) {
    const FockParams params{2, 2, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        const GeneratorSet gens(params);
        benchmark::DoNotOptimize(gens.a_plus(1).mat.entries().size());
    }
}
BENCHMARK(BM_BuildGenerators)->Arg(2)->Arg(3)->Arg(4);

void BM_VerifyDefining(benchmark::State& state) {
    const FockParams params{2, 2, static_cast<int>(state.range(0))};
    const GeneratorSet gens(params);
    for (auto _ : state) benchmark::DoNotOptimize(verify_defining(gens).size());
}
BENCHMARK(BM_VerifyDefining)->Arg(2)->Arg(3);

void BM_VerifyDerived(benchmark::State& state) {
    const FockParams params{2, 2, static_cast<int>(state.range(0))};
    const GeneratorSet gens(params);
    for (auto _ : state) benchmark::DoNotOptimize(verify_derived(gens).size());
}
BENCHMARK(BM_VerifyDerived)->Arg(2)->Arg(3);

void BM_ChevalleyReconstruct(benchmark::State& state) {
    const GeneratorSet gens({2, 1, 2}, ExactQ(Rational(2, 3)));
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_chevalley(gens).e.size());
}
BENCHMARK(BM_ChevalleyReconstruct);

void BM_ParseAndEval(benchmark::State& state) {
    const GeneratorSet gens({1, 1, 2});
    const ExactContext ctx(gens);
    const std::string text = "scomm(Am(1), Ap(1)) == qdivdiff(L(1), Linv(1))";
    for (auto _ : state) {
        const Identity id = parse_identity(text);
        benchmark::DoNotOptimize(check_identity(id, ctx).passed());
    }
}
BENCHMARK(BM_ParseAndEval);

} // namespace

BENCHMARK_MAIN();
