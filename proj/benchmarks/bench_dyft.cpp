#include <benchmark/benchmark.h>

#include <numbers>

#include "dyft/random.hpp"
#include "dyft/specfun.hpp"
#include "dyft/transform.hpp"

namespace {

using dyft::Complex;
using dyft::Direction;
using dyft::FractalOrder;

// Small |z|: the double-precision compensated path.
void BM_MittagLefflerDouble(benchmark::State& state) {
  const FractalOrder order(0.7);
  const Complex z = std::polar(1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(dyft::specfun::mittag_leffler(order, z));
}
BENCHMARK(BM_MittagLefflerDouble);

// Large oscillatory |z|: cancellation forces the MPFR path.
void BM_MittagLefflerMultiprecision(benchmark::State& state) {
  const double theta = static_cast<double>(state.range(0));
  const FractalOrder order(0.9);
  const Complex z = std::polar(std::pow(theta, 0.9), -std::numbers::pi * 0.45);
  for (auto _ : state) benchmark::DoNotOptimize(dyft::specfun::mittag_leffler(order, z));
}
BENCHMARK(BM_MittagLefflerMultiprecision)->Arg(50)->Arg(150)->Arg(350);

void BM_KernelEvaluator(benchmark::State& state) {
  const dyft::specfun::KernelEvaluator eval(FractalOrder(0.8), Direction::Forward,
                                            dyft::KernelConvention::ConjugatePair, 400.0, {});
  std::uint64_t m = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.at_fraction(m, 64));
    m = m % 3969 + 1;
  }
}
BENCHMARK(BM_KernelEvaluator);

void BM_MakePlan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FractalOrder order(state.range(1) / 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dyft::make_plan(n, order, Direction::Forward));
  }
}
BENCHMARK(BM_MakePlan)
    ->Args({16, 3})
    ->Args({32, 5})
    ->Args({64, 8})
    ->Args({64, 10})
    ->Unit(benchmark::kMillisecond);

void BM_Forward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto plan = dyft::make_plan(n, FractalOrder(0.8), Direction::Forward);
  dyft::SeededRng rng(1);
  const auto signal = rng.signal(n);
  for (auto _ : state) benchmark::DoNotOptimize(dyft::forward(signal, 1.0, plan));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Forward)->RangeMultiplier(2)->Range(4, 64)->Complexity(benchmark::oNSquared);

}  // namespace

BENCHMARK_MAIN();
