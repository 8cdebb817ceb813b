#include "cavrcs/driver.hpp"

#include "cavrcs/gram.hpp"
#include "cavrcs/interface_system.hpp"
#include "cavrcs/tbc.hpp"
#include "cavrcs/threading.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cavrcs {

namespace {

constexpr double pi = std::numbers::pi;
using clock_type = std::chrono::steady_clock;

double elapsed(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

[[noreturn]] void rethrow_in_phase(const char* phase, const std::exception& e) {
  throw std::runtime_error(std::string("phase ") + phase + ": " + e.what());
}

} // namespace

RunResult run_solver(const CavityConfig& cfg, const RunOptions& opt) {
  RunResult res;

  auto t0 = clock_type::now();
  const GramTensor gram = [&] {
    try {
      GramTensor g;
      if (!opt.cache_dir.empty() && gram_cache_load(opt.cache_dir, cfg.M, cfg.N, cfg.kappa0,
                                                    cfg.a, cfg.b, cfg.quad_grid, g))
        return g;
      GramParams gp;
      gp.quad_grid = cfg.quad_grid;
      gp.regime_threshold = cfg.regime_threshold;
      gp.threads = opt.threads;
      g = trig_gram(cfg.M, cfg.N, cfg.kappa0, cfg.a, cfg.b, gp);
      if (!opt.cache_dir.empty())
        gram_cache_store(opt.cache_dir, g, cfg.kappa0, cfg.a, cfg.b, cfg.quad_grid);
      return g;
    } catch (const std::exception& e) {
      rethrow_in_phase("T_singular", e);
    }
  }();
  res.t_singular = elapsed(t0);
  if (opt.cache_only) return res; // tensors computed and persisted; no solve

  t0 = clock_type::now();
  const ModeIndexSets sets{cfg.M, cfg.N};
  const InterfaceSystem sys = [&] {
    try {
      const DtnTable dtn = build_dtn_table(cfg);
      const TbcBlocks tbc = build_tbc_blocks(sets, gram, cfg.kappa0, cfg.a, cfg.b, cfg.h());
      return assemble_interface_system(sets, tbc, dtn);
    } catch (const std::exception& e) {
      rethrow_in_phase("T_assemble", e);
    }
  }();
  res.t_assemble = elapsed(t0);

  res.rcond = sys.rcond;

  const std::vector<double> thetas = cfg.sweep_thetas_deg();
  if (thetas.empty()) throw std::runtime_error("no samples: the theta sweep is empty");

  // Data-parallel over incidence angles against the shared factorization;
  // per-worker second counts apportion the sweep's wall time between the
  // solve and far-field buckets.
  const double phi = cfg.phi_deg * pi / 180.0;
  const double alpha = cfg.alpha_deg * pi / 180.0;
  const double lam2 = cfg.wavelength() * cfg.wavelength();
  const bool extra_solve = cfg.alpha_deg != 0.0 && cfg.alpha_deg != 90.0;
  res.samples.resize(thetas.size());
  const int workers = std::max(1, opt.threads);
  std::vector<double> solve_sec(workers, 0.0), rcs_sec(workers, 0.0);
  t0 = clock_type::now();
  try {
    parallel_for_indexed(static_cast<int>(thetas.size()), workers, [&](int i, int w) {
    const double theta_deg = thetas[i];
    const double theta = theta_deg * pi / 180.0;

    auto tp = clock_type::now();
    const IncidentWave wt = build_incident_wave(cfg.kappa0, theta, phi, 0.0);
    const IncidentWave wp = build_incident_wave(cfg.kappa0, theta, phi, pi / 2.0);
    const ApertureField st =
        solve_aperture(sys, build_incident_rhs(sets, wt, cfg.a, cfg.b, cfg.h()));
    const ApertureField sp =
        solve_aperture(sys, build_incident_rhs(sets, wp, cfg.a, cfg.b, cfg.h()));
    ApertureField sc = ApertureField::zero(sets);
    IncidentWave wc = wt;
    if (extra_solve) {
      wc = build_incident_wave(cfg.kappa0, theta, phi, alpha);
      sc = solve_aperture(sys, build_incident_rhs(sets, wc, cfg.a, cfg.b, cfg.h()));
    }
    solve_sec[w] += elapsed(tp);

    tp = clock_type::now();
    const std::array<double, 3> xhat = {-wt.d[0], -wt.d[1], -wt.d[2]};
    const auto At = radiation_vector(st, cfg.a, cfg.b, cfg.kappa0, xhat);
    const auto Ap = radiation_vector(sp, cfg.a, cfg.b, cfg.kappa0, xhat);
    const double sig_tt = cross_section(At, wt.theta_hat);
    const double sig_pp = cross_section(Ap, wp.phi_hat);
    double sigma = cfg.alpha_deg == 0.0 ? sig_tt : sig_pp;
    if (extra_solve) {
      const auto Ac = radiation_vector(sc, cfg.a, cfg.b, cfg.kappa0, xhat);
      sigma = cross_section(Ac, wc.p);
    }
    RcsSample s;
    s.theta_deg = theta_deg;
    s.phi_deg = cfg.phi_deg;
    s.alpha_deg = cfg.alpha_deg;
    s.sigma = sigma;
    s.sigma_over_lambda2 = sigma / lam2;
    s.rcs_tt_db = 10.0 * std::log10(sig_tt / lam2);
    s.rcs_pp_db = 10.0 * std::log10(sig_pp / lam2);
    res.samples[i] = s;
    rcs_sec[w] += elapsed(tp);
    });
  } catch (const std::exception& e) {
    rethrow_in_phase("T_solve", e);
  }
  const double sweep_wall = elapsed(t0);
  double sum_solve = 0.0, sum_rcs = 0.0;
  for (int w = 0; w < workers; ++w) {
    sum_solve += solve_sec[w];
    sum_rcs += rcs_sec[w];
  }
  const double total = sum_solve + sum_rcs;
  res.t_solve = total > 0.0 ? sweep_wall * (sum_solve / total) : 0.0;
  res.t_rcs = sweep_wall - res.t_solve;
  return res;
}

void emit_csv(std::ostream& os, const std::vector<RcsSample>& samples) {
  if (samples.empty()) throw std::runtime_error("no samples");
  os << "theta_deg,phi_deg,alpha_deg,sigma,sigma_over_lambda2,rcs_tt_db,rcs_pp_db\n";
  char buf[64];
  for (const RcsSample& s : samples) {
    const double vals[7] = {s.theta_deg, s.phi_deg,  s.alpha_deg, s.sigma,
                            s.sigma_over_lambda2, s.rcs_tt_db, s.rcs_pp_db};
    for (int i = 0; i < 7; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
      os << (i ? "," : "") << buf;
    }
    os << "\n";
  }
}

} // namespace cavrcs
