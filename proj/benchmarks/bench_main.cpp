#include <benchmark/benchmark.h>

#include <cmath>

#include <rnm/experiments.hpp>
#include <rnm/kernel.hpp>
#include <rnm/moments.hpp>
#include <rnm/sampler.hpp>
#include <rnm/ward.hpp>

using namespace rnm;

namespace {

const double kTau = std::pow(2.0, -0.25);

void BM_SeriesR(benchmark::State& state) {
  const double radius = static_cast<double>(state.range(0));
  const KernelRep k = mittag_leffler_kernel(2, kTau, mittag_leffler_required_terms(2, kTau, radius));
  const Complex z(0.7 * radius, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(k.R(z));
  state.counters["terms"] = static_cast<double>(k.series()->terms());
}
BENCHMARK(BM_SeriesR)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

void BM_HomogeneousMoments(benchmark::State& state) {
  const CanonicalDecomposition dec = canonical_decompose(figure1_potential());
  const WeightedMeasure m = WeightedMeasure::homogeneous(dec.q0, dec.tau0);
  for (auto _ : state) benchmark::DoNotOptimize(moment_matrix(m, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_HomogeneousMoments)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_GramR(benchmark::State& state) {
  const CanonicalDecomposition dec = canonical_decompose(figure1_potential());
  const KernelRep k = gram_bergman_kernel(WeightedMeasure::homogeneous(dec.q0, dec.tau0), static_cast<int>(state.range(0)));
  const Complex z(0.8, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(k.R(z));
}
BENCHMARK(BM_GramR)->Arg(16)->Arg(48);

void BM_CauchyTransform(benchmark::State& state) {
  const KernelRep k = mittag_leffler_kernel(2, kTau, mittag_leffler_required_terms(2, kTau, 3.5));
  QuadSpec q;
  q.adaptive = false;
  q.angular_points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_transform(k, Complex(0.5, 0.0), q));
}
BENCHMARK(BM_CauchyTransform)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_McmcSweeps(benchmark::State& state) {
  GibbsEnsemble e;
  e.n = static_cast<int>(state.range(0));
  e.potential = Potential::radial({0.0, 1.0});
  e.seed = 1;
  McmcOptions o;
  o.sweeps = 1000;
  o.burn_in = 100;
  for (auto _ : state) benchmark::DoNotOptimize(mcmc_run(e, o));
  state.SetItemsProcessed(state.iterations() * o.sweeps * e.n);
}
BENCHMARK(BM_McmcSweeps)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
