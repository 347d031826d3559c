#include <benchmark/benchmark.h>

#include <vector>

#include "shortsum/analytic.hpp"
#include "shortsum/rng.hpp"
#include "shortsum/scanners.hpp"
#include "shortsum/sieve.hpp"

using namespace shortsum;

namespace {

void BM_SieveWindow(benchmark::State& state) {
  const auto start = static_cast<std::uint64_t>(state.range(0));
  const std::uint64_t len = 1 << 16;
  for (auto _ : state) {
    auto table = sieve_factorize(Window{start, len});
    benchmark::DoNotOptimize(table.total_factors());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * len));
}
BENCHMARK(BM_SieveWindow)->Arg(1'000'000)->Arg(1'000'000'000)->Arg(100'000'000'000);

void BM_RangeSumLiouville(benchmark::State& state) {
  const auto f = MultiplicativeFunction::liouville();
  const auto X = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(range_sum(f, X, 2 * X, std::nullopt, ExecPolicy{1}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * (X + 1)));
}
BENCHMARK(BM_RangeSumLiouville)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

DirichletPolynomial random_poly(std::size_t n) {
  SplitMix64 rng(1);
  std::vector<double> a(n);
  for (auto& v : a) v = rng.next() & 1 ? 1.0 : -1.0;
  return DirichletPolynomial(1, std::move(a));
}

void BM_EvalAt(benchmark::State& state) {
  const auto poly = random_poly(static_cast<std::size_t>(state.range(0)));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_at(poly, 0.0, t));
    t += 0.37;
  }
}
BENCHMARK(BM_EvalAt)->Arg(500)->Arg(10'000);

void BM_MeanSquare(benchmark::State& state) {
  const auto poly = random_poly(500);
  const double step = 1.0 / (8.0 * std::log(500.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_square(poly, static_cast<double>(state.range(0)), step, ExecPolicy{1}));
  }
}
BENCHMARK(BM_MeanSquare)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ScanShort(benchmark::State& state) {
  const auto f = MultiplicativeFunction::liouville();
  for (auto _ : state) {
    auto r = scan_short(f, 1'000'000, 1000, 0.1, static_cast<std::uint64_t>(state.range(0)), 1, {}, {},
                        ExecPolicy{1});
    benchmark::DoNotOptimize(r.mean_square);
  }
}
BENCHMARK(BM_ScanShort)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
