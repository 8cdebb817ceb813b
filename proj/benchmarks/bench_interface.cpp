#include "cavrcs/interface_system.hpp"

#include "cavrcs/config.hpp"
#include "cavrcs/gram.hpp"
#include "cavrcs/tbc.hpp"
#include "cavrcs/vertical.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

constexpr double pi = std::numbers::pi;

struct Prepared {
  cavrcs::CavityConfig cfg;
  cavrcs::ModeIndexSets sets;
  cavrcs::TbcBlocks tbc;
  cavrcs::DtnTable dtn;
};

Prepared prepare(int MN) {
  Prepared p;
  p.cfg.a = p.cfg.b = 1.0;
  p.cfg.c1 = 1.0;
  p.cfg.kappa0 = 2 * pi;
  p.cfg.M = p.cfg.N = MN;
  p.cfg.J = 300;
  p.cfg.quad_grid = std::max(128, 16 * MN);
  p.sets = cavrcs::ModeIndexSets{MN, MN};
  cavrcs::GramParams gp;
  gp.quad_grid = p.cfg.quad_grid;
  gp.threads = 1;
  const auto gram = cavrcs::trig_gram(MN, MN, p.cfg.kappa0, p.cfg.a, p.cfg.b, gp);
  p.tbc = cavrcs::build_tbc_blocks(p.sets, gram, p.cfg.kappa0, p.cfg.a, p.cfg.b, p.cfg.h());
  p.dtn = cavrcs::build_dtn_table(p.cfg);
  return p;
}

void BM_assemble_and_factor(benchmark::State& state) {
  const Prepared p = prepare(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto sys = cavrcs::assemble_interface_system(p.sets, p.tbc, p.dtn);
    benchmark::DoNotOptimize(sys.rcond);
  }
}
BENCHMARK(BM_assemble_and_factor)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_solve_per_incidence(benchmark::State& state) {
  const Prepared p = prepare(static_cast<int>(state.range(0)));
  const auto sys = cavrcs::assemble_interface_system(p.sets, p.tbc, p.dtn);
  const auto wave = cavrcs::build_incident_wave(p.cfg.kappa0, 0.4, 0.2, 0.0);
  const auto rhs = cavrcs::build_incident_rhs(p.sets, wave, p.cfg.a, p.cfg.b, p.cfg.h());
  for (auto _ : state) {
    auto x = cavrcs::solve_aperture(sys, rhs);
    benchmark::DoNotOptimize(x.e3.data());
  }
}
BENCHMARK(BM_solve_per_incidence)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

} // namespace
