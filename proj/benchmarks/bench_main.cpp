// Microbenchmarks for the hot paths: exact polynomial products, bracket-table
// verification, grid residual scans, and the second-moment quadrature.

#include <benchmark/benchmark.h>

#include "metaward/correlator.hpp"
#include "metaward/generators.hpp"
#include "metaward/hardy.hpp"
#include "metaward/verify.hpp"
#include "metaward/ward.hpp"

namespace mw = metaward;

namespace {

mw::CorrelatorSpec bench_spec(mw::CorrelatorFamily family) {
    mw::CorrelatorSpec spec;
    spec.family = family;
    spec.x1 = spec.x2 = 0.8;
    spec.gamma1 = spec.gamma2 = 0.45;
    spec.nu1 = 0.6;
    spec.nu2 = 0.7;
    spec.mu = 0.7;
    spec.mass = 1.2;
    spec.c = 0.2;
    return spec;
}

void BM_PolyProduct(benchmark::State& state) {
    const mw::RingPtr& ring = mw::Ring::one_body();
    mw::Poly t = mw::Poly::variable(ring, "t");
    mw::Poly r = mw::Poly::variable(ring, "r");
    mw::Poly mu = mw::Poly::variable(ring, "mu");
    mw::Poly base = (t + mu * r).pow(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        mw::Poly prod = base * base;
        benchmark::DoNotOptimize(prod);
    }
}
BENCHMARK(BM_PolyProduct)->Arg(4)->Arg(8)->Arg(16);

void BM_Commutator(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    mw::DiffOp a = mw::make_generator({mw::Family::Meta, mw::GenKind::X, n, {}});
    mw::DiffOp b = mw::make_generator({mw::Family::Meta, mw::GenKind::Y, n, {}});
    for (auto _ : state) {
        mw::DiffOp c = mw::commutator(a, b);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_Commutator)->Arg(2)->Arg(5);

void BM_StructureConstants(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        mw::AlgebraReport report = mw::verify_structure_constants(mw::Family::Meta, n_max);
        benchmark::DoNotOptimize(report.all_zero);
    }
}
BENCHMARK(BM_StructureConstants)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_WardResidual(benchmark::State& state) {
    mw::CorrelatorSpec spec = bench_spec(mw::CorrelatorFamily::MetaFinal);
    mw::GridSpec grid = mw::GridSpec::standard();
    for (auto _ : state) {
        mw::WardReport report = mw::ward_residual(spec, grid, 1e-10);
        benchmark::DoNotOptimize(report.max_rel);
    }
}
BENCHMARK(BM_WardResidual)->Unit(benchmark::kMillisecond);

void BM_CorrelatorEval(benchmark::State& state) {
    mw::CorrelatorSpec spec = bench_spec(mw::CorrelatorFamily::Dual);
    mw::FieldPoint p{1.5, 0.75, 0.25, -0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mw::eval_correlator(spec, p));
    }
}
BENCHMARK(BM_CorrelatorEval);

void BM_SecondMoment(benchmark::State& state) {
    for (auto _ : state) {
        mw::QuadratureResult q = mw::m2_numeric(2.0, 0.5, 1.0);
        benchmark::DoNotOptimize(q.value);
    }
}
BENCHMARK(BM_SecondMoment)->Unit(benchmark::kMillisecond);

void BM_SpectralOnesidedness(benchmark::State& state) {
    const std::size_t n = std::size_t{1} << static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        mw::SpectrumReport report = mw::spectral_onesidedness(2.0, 1.0, n, 200.0);
        benchmark::DoNotOptimize(report.offside_fraction);
    }
}
BENCHMARK(BM_SpectralOnesidedness)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
