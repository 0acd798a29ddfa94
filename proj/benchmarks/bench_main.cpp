#include <benchmark/benchmark.h>

#include <random>

#include "padyn/builtins.hpp"
#include "padyn/geometry.hpp"
#include "padyn/mahler.hpp"
#include "padyn/quotient.hpp"

using namespace padyn;

namespace {

MahlerSeries random_series(std::uint64_t p, int n, int K, std::size_t size) {
  std::mt19937_64 rng(size);
  const Residue modulus = checked_pow(p, K);
  std::vector<Residue> a(size);
  for (auto& v : a) v = rng() % modulus;
  return MahlerSeries(p, n, K, a);
}

void BM_BinomialEval(benchmark::State& state) {
  const auto i = static_cast<std::uint64_t>(state.range(0));
  const auto x = PadicInt::make(2, 60, 123456789);
  for (auto _ : state) benchmark::DoNotOptimize(binomial_eval(x, i, 32));
}
BENCHMARK(BM_BinomialEval)->Arg(16)->Arg(256)->Arg(4096);

void BM_CoeffsFromOracle(benchmark::State& state) {
  const auto f = builtins::shift(2, 1);
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(coeffs_from_oracle(f, count, 32));
}
BENCHMARK(BM_CoeffsFromOracle)->Arg(256)->Arg(4096);

void BM_EvalRange(benchmark::State& state) {
  const auto s = random_series(3, 1, 20, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_range(s, 1 << 16, 12));
  state.SetItemsProcessed(state.iterations() * (1 << 16));
}
BENCHMARK(BM_EvalRange)->Arg(16)->Arg(85);

void BM_MeasureCheck(benchmark::State& state) {
  // Balanced at every level, so no early exit.
  const auto f = as_oracle(coeffs_from_oracle(builtins::shift(2, 1), 64, 24));
  const auto k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(is_measure_preserving_upto(f, k));
}
BENCHMARK(BM_MeasureCheck)->Arg(12)->Arg(16);

void BM_Cycles(benchmark::State& state) {
  const auto f = function_of(builtins::odometer(2));
  const auto table = endomap(f, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cycles(table));
}
BENCHMARK(BM_Cycles)->Arg(12)->Arg(18);

void BM_FamilyImage(benchmark::State& state) {
  const auto t = builtins::digitwise_add(2);
  const auto depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(family_image(*t, depth, 6));
}
BENCHMARK(BM_FamilyImage)->Arg(6)->Arg(8);

void BM_FunctionImage(benchmark::State& state) {
  const auto f = builtins::shift(2, 1);
  const auto levels = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cover_fraction(image_points_upto(f, levels), 6));
}
BENCHMARK(BM_FunctionImage)->Arg(10)->Arg(14);

}  // namespace
BENCHMARK_MAIN();
