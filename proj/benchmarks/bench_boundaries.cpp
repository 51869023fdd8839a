#include <benchmark/benchmark.h>

#include <vector>

#include "selfnorm/cgf.hpp"
#include "selfnorm/linalg.hpp"
#include "selfnorm/rng.hpp"
#include "selfnorm/sim.hpp"
#include "selfnorm/stitching.hpp"
#include "selfnorm/vector_bound.hpp"

namespace {

using namespace selfnorm;

void BM_ScalarBoundaryNormal(benchmark::State& state) {
  const BoundaryParams p;
  const CgfFamily f = CgfFamily::normal();
  double v = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scalar_boundary(v, f, p));
    v = v < 1e9 ? v * 1.001 : 1.0;
  }
}
BENCHMARK(BM_ScalarBoundaryNormal);

void BM_ConjugateInversePoisson(benchmark::State& state) {
  const CgfFamily f = CgfFamily::poisson(1.0);
  double x = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.conjugate_inverse(x));
    x = x < 1e3 ? x * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_ConjugateInversePoisson);

void BM_SymEig(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  SplitMix64 rng(1);
  SymMatrix v(d);
  std::vector<double> x(d);
  for (int k = 0; k < 2 * d; ++k) {
    for (auto& xi : x) xi = rng.next_gaussian();
    v.add_outer(x);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(sym_eig(v));
  }
}
BENCHMARK(BM_SymEig)->Arg(2)->Arg(3)->Arg(5)->Arg(10);

void BM_VectorBoundary(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  SplitMix64 rng(2);
  SymMatrix v(d);
  std::vector<double> x(d);
  for (int k = 0; k < 3 * d; ++k) {
    for (auto& xi : x) xi = rng.next_gaussian();
    v.add_outer(x);
  }
  const VectorBoundaryParams p;
  const CgfFamily f = CgfFamily::normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(vector_boundary(v, f, p));
  }
}
BENCHMARK(BM_VectorBoundary)->Arg(2)->Arg(3)->Arg(5);

void BM_GaussianLinearStep(benchmark::State& state) {
  ProcessSpec spec;
  spec.kind = ProcessKind::gaussian_linear;
  spec.d = static_cast<int>(state.range(0));
  spec.horizon = 1L << 40;
  spec.covariates = spec.d > 1 ? CovariateLaw::rotating : CovariateLaw::constant_axis;
  ProcessStepper stepper(spec);
  for (auto _ : state) {
    stepper.step();
    benchmark::DoNotOptimize(stepper.s().data());
  }
}
BENCHMARK(BM_GaussianLinearStep)->Arg(1)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
