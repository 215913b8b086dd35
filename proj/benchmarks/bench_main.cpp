#include <benchmark/benchmark.h>

#include "modroots/energy.hpp"
#include "modroots/equidist.hpp"
#include "modroots/gowers.hpp"
#include "modroots/modular.hpp"
#include "modroots/prodpoly.hpp"
#include "modroots/rng.hpp"

using namespace modroots;

namespace {

std::vector<BigInt> random_counts(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<BigInt> v(n);
  for (auto& x : v) x = from_u64(rng.uniform(0, 1000));
  return v;
}

void BM_Convolve(benchmark::State& state, ConvolutionPath path) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = random_counts(n, 1), v = random_counts(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_convolve(u, v, path));
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_Convolve, naive, ConvolutionPath::Naive)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(BM_Convolve, ntt, ConvolutionPath::Ntt)->RangeMultiplier(4)->Range(64, 65536);

void BM_EnergyT22(benchmark::State& state) {
  const auto q = PrimeModulus::make(static_cast<std::uint64_t>(state.range(0)));
  const std::uint64_t N = q.value() / 4;
  for (auto _ : state) benchmark::DoNotOptimize(energy_T(EnergyQuery{.nu = 2, .k = 2, .N = N, .j = 3, .q = q}));
}
BENCHMARK(BM_EnergyT22)->Arg(1009)->Arg(10007)->Arg(100003);

void BM_EnergyT42(benchmark::State& state) {
  const auto q = PrimeModulus::make(static_cast<std::uint64_t>(state.range(0)));
  const std::uint64_t N = q.value() / 4;
  for (auto _ : state) benchmark::DoNotOptimize(energy_T(EnergyQuery{.nu = 4, .k = 2, .N = N, .j = 3, .q = q}));
}
BENCHMARK(BM_EnergyT42)->Arg(1009)->Arg(10007);

void BM_GowersU3(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  SplitMix64 rng(7);
  IndicatorSet A(q);
  for (std::uint64_t x = 0; x < q; ++x)
    if (rng.next() >> 63) A.insert(x);
  for (auto _ : state) benchmark::DoNotOptimize(gowers_norm(A, 3));
}
BENCHMARK(BM_GowersU3)->Arg(61)->Arg(257)->Arg(1021);

void BM_ConstructFk(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(construct_Fk(k));
}
BENCHMARK(BM_ConstructFk)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_EvaluateFk(benchmark::State& state) {
  const auto F = construct_Fk(static_cast<unsigned>(state.range(0)));
  SplitMix64 rng(3);
  std::array<BigInt, 4> n;
  for (auto _ : state) {
    for (auto& x : n) x = from_u64(rng.uniform(1, 1000));
    benchmark::DoNotOptimize(evaluate_Fk(F, n));
  }
}
BENCHMARK(BM_EvaluateFk)->DenseRange(2, 4);

void BM_ZeroCount(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_Tk_zeros(3, N));
}
BENCHMARK(BM_ZeroCount)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_GammaDiscrepancy(benchmark::State& state) {
  const auto q = PrimeModulus::make(static_cast<std::uint64_t>(state.range(0)));
  const auto P = static_cast<std::uint64_t>(std::pow(static_cast<double>(q.value()), 0.8));
  for (auto _ : state) benchmark::DoNotOptimize(gamma_qP(q, P));
}
BENCHMARK(BM_GammaDiscrepancy)->Arg(1009)->Arg(10007)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
