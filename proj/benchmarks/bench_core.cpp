// Micro-benchmarks for the hot paths: coefficient recursions, reduced form
// evaluation, exact Dedekind sums, truncated series products, and the
// adaptive quadrature behind every period number.  These exist to catch
// regressions in the numeric kernels, not to prove throughput claims; run
// with --benchmark_min_time=... for stable numbers.

#include <complex>
#include <random>

#include <benchmark/benchmark.h>

#include "ncperiods/forms.hpp"
#include "ncperiods/iterated_periods.hpp"
#include "ncperiods/nc_series.hpp"
#include "ncperiods/quadrature.hpp"
#include "ncperiods/rational.hpp"

using namespace ncperiods;

namespace {

// Deterministically filled series so products exercise every level.
NCSeries filled_series(std::size_t letters, std::size_t depth, unsigned salt) {
    NCSeries s(letters, depth);
    std::mt19937 rng(salt);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t len = 0; len <= depth; ++len) {
        std::size_t count = 1;
        for (std::size_t j = 0; j < len; ++j) count *= letters;
        for (std::size_t i = 0; i < count; ++i) s.at(len, i) = Complex(u(rng), u(rng));
    }
    return s;
}

void BM_EtaCoefficients(benchmark::State& state) {
    const auto M = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto c = eta_power_coefficients(24.0, M);
        benchmark::DoNotOptimize(c.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EtaCoefficients)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

void BM_FormEvaluation(benchmark::State& state) {
    // Reduction-based evaluation at a deep-cusp point, the regime the
    // quadrature truncation probes live in.
    const CuspForm delta(12.0, 256);
    const Complex z(0.37, 1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(delta.evaluate(z));
}
BENCHMARK(BM_FormEvaluation);

void BM_DedekindSumEuclid(benchmark::State& state) {
    // O(log c) continued-fraction route on 9-digit arguments.
    for (auto _ : state) {
        Rational s = dedekind_sum_euclid(BigInt(1000003), BigInt(998244353));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_DedekindSumEuclid);

void BM_SeriesMultiply(benchmark::State& state) {
    const auto depth = static_cast<std::size_t>(state.range(0));
    const NCSeries a = filled_series(2, depth, 11);
    const NCSeries b = filled_series(2, depth, 23);
    for (auto _ : state) {
        NCSeries c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_SeriesMultiply)->Arg(2)->Arg(3)->Arg(4);

void BM_PeriodIntegral(benchmark::State& state) {
    // Full period function of the weight-12 form at a boundary point; the
    // innermost cost of every moment and reciprocity value.
    const CuspForm delta(12.0, 256);
    QuadratureOptions opt;
    opt.tol = 1e-10;
    for (auto _ : state) {
        QuadResult r = period_function(delta, Complex(0, -1), opt);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_PeriodIntegral);

void BM_IteratedTransport(benchmark::State& state) {
    // Depth-2 transport along the imaginary axis for the one-form family;
    // the kernel behind every series-level identity check.
    const FormFamily fam({CuspForm(12.0, 128)}, 2);
    TransportOptions opt;
    opt.tol = 1e-8;
    for (auto _ : state) {
        NCSeries J = iterated_period(fam, Cusp(0, 1), Cusp(1, 0), Complex(0, -1), opt);
        benchmark::DoNotOptimize(J);
    }
}
BENCHMARK(BM_IteratedTransport);

}  // namespace

BENCHMARK_MAIN();
