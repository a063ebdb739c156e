#include <benchmark/benchmark.h>

#include <complex>

#include "polycs/coherent.hpp"
#include "polycs/conjugate.hpp"
#include "polycs/measure.hpp"
#include "polycs/realizations.hpp"

namespace {

using namespace polycs;

AlgebraSpec higgs_spec() {
  const Polynomial x1{{0.0, 1.0}};
  const Polynomial x2{{1.0, 1.0}};
  return {"higgs", -1.0 * (1.0 * (x1 * x2) + 0.1 * (x1 * x1 * x2 * x2)), ""};
}

void BM_BuildRep(benchmark::State& state) {
  const AlgebraSpec spec = higgs_spec();
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_lowest_weight_rep(spec, 1.0, dim));
}
BENCHMARK(BM_BuildRep)->Arg(32)->Arg(128);

void BM_VerifyClosure(benchmark::State& state) {
  const AlgebraSpec spec = higgs_spec();
  const LowestWeightRep rep =
      build_lowest_weight_rep(spec, 1.0, static_cast<int>(state.range(0)));
  const StructurePolynomial f = spec.f();
  for (auto _ : state) benchmark::DoNotOptimize(verify_closure(rep, f));
}
BENCHMARK(BM_VerifyClosure)->Arg(32)->Arg(128);

void BM_AnnihilationCS(benchmark::State& state) {
  const LowestWeightRep rep = build_lowest_weight_rep(
      AlgebraSpec{"su11-bg", CasimirShift{{0.0, -0.5, -0.5}}, ""}, 1.0, 128);
  for (auto _ : state)
    benchmark::DoNotOptimize(annihilation_cs(rep, {1.0, 0.5}, 1e-12));
}
BENCHMARK(BM_AnnihilationCS);

void BM_PerelomovExpm(benchmark::State& state) {
  const LowestWeightRep rep = build_lowest_weight_rep(
      AlgebraSpec{"su11", CasimirShift{{0.0, -1.0, -1.0}}, ""}, 0.25,
      static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(perelomov_cs(rep, {0.6, 0.2}));
}
BENCHMARK(BM_PerelomovExpm)->Arg(64)->Arg(128);

void BM_BesselK(benchmark::State& state) {
  double x = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_k(1.5, x));
    x = (x < 30.0) ? x * 1.1 : 0.05;
  }
}
BENCHMARK(BM_BesselK);

void BM_MeasureMoment(benchmark::State& state) {
  const MeasureSpec measure = bg_measure(-1.0);
  for (auto _ : state) {
    const auto integrand = [&](double r) {
      const double d = measure.density(r);
      return d == 0.0 ? 0.0 : d * std::pow(r, 9.0);
    };
    benchmark::DoNotOptimize(integrate_halfline(integrand, 1e-8));
  }
}
BENCHMARK(BM_MeasureMoment);

void BM_SectorReduce(benchmark::State& state) {
  const RealizedGenerators gen = oscillator_su11_generators(96);
  for (auto _ : state)
    benchmark::DoNotOptimize(sector_reduce(gen, gen.charges, {1.0}));
}
BENCHMARK(BM_SectorReduce);

}  // namespace

BENCHMARK_MAIN();
