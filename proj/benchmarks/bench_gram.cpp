#include "cavrcs/gram.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

constexpr double pi = std::numbers::pi;

void BM_trig_gram_quadgrid(benchmark::State& state) {
  cavrcs::GramParams gp;
  gp.quad_grid = static_cast<int>(state.range(0));
  gp.threads = 1;
  for (auto _ : state) {
    auto g = cavrcs::trig_gram(4, 4, 2 * pi, 1.0, 1.0, gp);
    benchmark::DoNotOptimize(g.i3.data());
  }
}
BENCHMARK(BM_trig_gram_quadgrid)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_trig_gram_modes(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  cavrcs::GramParams gp;
  gp.quad_grid = 16 * M;
  gp.threads = 1;
  for (auto _ : state) {
    auto g = cavrcs::trig_gram(M, M, 2 * pi, 1.0, 1.0, gp);
    benchmark::DoNotOptimize(g.i3.data());
  }
}
BENCHMARK(BM_trig_gram_modes)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_trig_gram_threads(benchmark::State& state) {
  cavrcs::GramParams gp;
  gp.quad_grid = 256;
  gp.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto g = cavrcs::trig_gram(8, 8, 2 * pi, 1.0, 1.0, gp);
    benchmark::DoNotOptimize(g.i3.data());
  }
}
BENCHMARK(BM_trig_gram_threads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace
