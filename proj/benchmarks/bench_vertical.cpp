#include "cavrcs/vertical.hpp"

#include "cavrcs/config.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

constexpr double pi = std::numbers::pi;

void BM_dtn_table_levels(benchmark::State& state) {
  cavrcs::CavityConfig cfg;
  cfg.a = cfg.b = 1.0;
  cfg.c1 = 3.0;
  cfg.kappa0 = 2 * pi;
  cfg.M = cfg.N = 8;
  cfg.J = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto t = cavrcs::build_dtn_table(cfg);
    benchmark::DoNotOptimize(t.r12.data());
  }
}
BENCHMARK(BM_dtn_table_levels)->RangeMultiplier(2)->Range(250, 4000)->Unit(benchmark::kMicrosecond);

void BM_dtn_table_layered(benchmark::State& state) {
  cavrcs::CavityConfig cfg;
  cfg.a = cfg.b = 1.0;
  cfg.layered = true;
  cfg.c2 = 2.0;
  cfg.c1 = 1.0;
  cfg.J = static_cast<int>(state.range(0));
  cfg.I_top = (cfg.J + 1) / 2 - 1; // keeps both layers on one spacing
  cfg.eps1 = {2.0, 0.3};
  cfg.eps2 = {4.0, 1.0};
  cfg.kappa0 = 2 * pi;
  cfg.M = cfg.N = 8;
  for (auto _ : state) {
    auto t = cavrcs::build_dtn_table(cfg);
    benchmark::DoNotOptimize(t.r12.data());
  }
}
BENCHMARK(BM_dtn_table_layered)->Arg(499)->Arg(999)->Arg(1999)->Unit(benchmark::kMicrosecond);

void BM_recover_interior(benchmark::State& state) {
  cavrcs::CavityConfig cfg;
  cfg.a = cfg.b = 1.0;
  cfg.c1 = 3.0;
  cfg.kappa0 = 2 * pi;
  cfg.M = cfg.N = 8;
  cfg.J = static_cast<int>(state.range(0));
  const auto dtn = cavrcs::build_dtn_table(cfg);
  const cavrcs::ModeIndexSets sets{cfg.M, cfg.N};
  auto f = cavrcs::ApertureField::zero(sets);
  for (auto& v : f.e3) v = {1.0, -0.5};
  for (auto& v : f.e1) v = {0.25, 1.0};
  for (auto _ : state) {
    auto vol = cavrcs::recover_interior(f, dtn, cfg);
    benchmark::DoNotOptimize(vol.e3.data());
  }
}
BENCHMARK(BM_recover_interior)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

} // namespace
