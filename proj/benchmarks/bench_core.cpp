#include <benchmark/benchmark.h>

#include <pclab/dsl.hpp>
#include <pclab/heights.hpp>
#include <pclab/profiler.hpp>
#include <pclab/rationality.hpp>
#include <pclab/series.hpp>

using namespace pclab;

namespace {

SeriesExpr trinomial() { return dsl::lower_to_series("1/(1-x1-x2)", 2); }

std::vector<CycloElement> inverse_factorials(int count) {
    std::vector<CycloElement> c;
    for (int k = 0; k < count; ++k) c.emplace_back(Rat(Int(1), factorial(k)));
    return c;
}

void BM_CycloMul(benchmark::State& state) {
    const unsigned long n = state.range(0);
    const CycloElement a = CycloElement::zeta(n) + CycloElement{Rat(1, 2)};
    const CycloElement b = CycloElement::zeta(n, 2) - CycloElement{Rat(3, 7)};
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycloMul)->Arg(8)->Arg(12)->Arg(24)->Arg(60);

void BM_CycloInverse(benchmark::State& state) {
    const CycloElement a = CycloElement::zeta(state.range(0)) + CycloElement(2L);
    for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_CycloInverse)->Arg(12)->Arg(24);

void BM_ExpandTrinomial(benchmark::State& state) {
    SeriesExpr f = trinomial();
    for (auto _ : state) benchmark::DoNotOptimize(expand(f, state.range(0)));
}
BENCHMARK(BM_ExpandTrinomial)->Arg(32)->Arg(64)->Arg(128);

void BM_HeightProfile(benchmark::State& state) {
    SeriesExpr f = dsl::lower_to_series("1/((1-x1)*(1-x1*x2)^2)", 2);
    for (auto _ : state) benchmark::DoNotOptimize(height_profile(f, state.range(0)));
}
BENCHMARK(BM_HeightProfile)->Arg(64)->Arg(128);

void BM_Height(benchmark::State& state) {
    const CycloElement a =
        CycloElement{Rat(3, 2)} + CycloElement{Rat(5, 7)} * CycloElement::zeta(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(height(a));
}
BENCHMARK(BM_Height)->Arg(5)->Arg(12);

void BM_Hankel(benchmark::State& state) {
    const auto c = inverse_factorials(2 * state.range(0) + 1);
    for (auto _ : state) benchmark::DoNotOptimize(hankel_determinant(c, state.range(0)));
}
BENCHMARK(BM_Hankel)->Arg(4)->Arg(8)->Arg(12);

void BM_ReconstructMultivariate(benchmark::State& state) {
    SeriesExpr f = dsl::lower_to_series("1/((1-x1*x2)*(1-zeta(3)*x1))", 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(reconstruct_multivariate(f, 2, 3, state.range(0)));
}
BENCHMARK(BM_ReconstructMultivariate)->Arg(10)->Arg(16);

void BM_Remark(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(remark_experiment(1, state.range(0)));
}
BENCHMARK(BM_Remark)->Arg(500)->Arg(2000);

void BM_CertifyTorsion(benchmark::State& state) {
    SeriesExpr f = dsl::lower_to_series("1/((1-x1)*(1-x1*x2))", 2);
    CertifyConfig cfg;
    cfg.profile_N = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(certify_dichotomy(f, cfg));
}
BENCHMARK(BM_CertifyTorsion)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
