#include <benchmark/benchmark.h>

#include "starkforge/mpfun.hpp"

using namespace starkforge;
using namespace starkforge::mpk;

static void GammaComplex(benchmark::State& state) {
    PrecisionCtx ctx(state.range(0));
    BigComplex s(BigReal(0.25, ctx.bits), BigReal(1.5, ctx.bits));
    for (auto _ : state) {
        auto v = gamma(s, ctx);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(GammaComplex)->Arg(128)->Arg(256);

static void BesselKPaper(benchmark::State& state) {
    PrecisionCtx ctx(state.range(0));
    BigReal s(0.5, ctx.bits), c(2.0, ctx.bits);
    for (auto _ : state) {
        auto v = bessel_k_paper(s, c, ctx);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BesselKPaper)->Arg(128)->Arg(256);

int main(int argc, char** argv) {
    ::benchmark::Initialize(&argc, argv);
    if (::benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    ::benchmark::RunSpecifiedBenchmarks();
    ::benchmark::Shutdown();
    return 0;
}
