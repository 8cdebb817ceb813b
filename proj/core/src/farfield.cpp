#include "cavrcs/farfield.hpp"

#include "cavrcs/tbc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavrcs {

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

std::array<cplx, 3> radiation_vector(const ApertureField& f, double a, double b, double kappa0,
                                     const std::array<double, 3>& xhat) {
  if (xhat[2] < 0.0)
    throw std::invalid_argument("radiation_vector: direction not in the upper half space");
  const int M = f.sets.M, N = f.sets.N;
  const double a1 = -kappa0 * xhat[0], a2 = -kappa0 * xhat[1];
  cplx w1{}, w2{};
  for (int m = 0; m <= M; ++m)
    for (int n = 1; n <= N; ++n)
      w1 += f.e1[f.sets.flat1(m, n)] * cos_exp_integral(m, a1, a) * sin_exp_integral(n, a2, b);
  for (int m = 1; m <= M; ++m)
    for (int n = 0; n <= N; ++n)
      w2 += f.e2[f.sets.flat2(m, n)] * sin_exp_integral(m, a1, a) * cos_exp_integral(n, a2, b);
  // V = (-W2, W1, 0); A = (-i kappa0 / 2 pi) V x xhat.
  const cplx s{0.0, -kappa0 / (2.0 * pi)};
  return {s * (w1 * xhat[2]), s * (w2 * xhat[2]), s * (-w2 * xhat[1] - w1 * xhat[0])};
}

double cross_section(const std::array<cplx, 3>& A, const std::array<double, 3>& pol) {
  const cplx proj = A[0] * pol[0] + A[1] * pol[1] + A[2] * pol[2];
  return 4.0 * pi * std::norm(proj);
}

RcsSample backscatter_sample(const InterfaceSystem& sys, const CavityConfig& cfg,
                             double theta_deg) {
  const double theta = theta_deg * pi / 180.0;
  const double phi = cfg.phi_deg * pi / 180.0;
  const double alpha = cfg.alpha_deg * pi / 180.0;
  const double h = cfg.h();

  const IncidentWave wt = build_incident_wave(cfg.kappa0, theta, phi, 0.0);
  const IncidentWave wp = build_incident_wave(cfg.kappa0, theta, phi, pi / 2.0);
  const ApertureField st = solve_aperture(sys, build_incident_rhs(sys.sets, wt, cfg.a, cfg.b, h));
  const ApertureField sp = solve_aperture(sys, build_incident_rhs(sys.sets, wp, cfg.a, cfg.b, h));

  const std::array<double, 3> xhat = {-wt.d[0], -wt.d[1], -wt.d[2]};
  const auto At = radiation_vector(st, cfg.a, cfg.b, cfg.kappa0, xhat);
  const auto Ap = radiation_vector(sp, cfg.a, cfg.b, cfg.kappa0, xhat);
  const double sig_tt = cross_section(At, wt.theta_hat);
  const double sig_pp = cross_section(Ap, wp.phi_hat);

  double sigma;
  if (cfg.alpha_deg == 0.0) {
    sigma = sig_tt;
  } else if (cfg.alpha_deg == 90.0) {
    sigma = sig_pp;
  } else {
    const IncidentWave wc = build_incident_wave(cfg.kappa0, theta, phi, alpha);
    const ApertureField sc =
        solve_aperture(sys, build_incident_rhs(sys.sets, wc, cfg.a, cfg.b, h));
    const auto Ac = radiation_vector(sc, cfg.a, cfg.b, cfg.kappa0, xhat);
    sigma = cross_section(Ac, wc.p);
  }

  const double lam2 = cfg.wavelength() * cfg.wavelength();
  RcsSample s;
  s.theta_deg = theta_deg;
  s.phi_deg = cfg.phi_deg;
  s.alpha_deg = cfg.alpha_deg;
  s.sigma = sigma;
  s.sigma_over_lambda2 = sigma / lam2;
  s.rcs_tt_db = 10.0 * std::log10(sig_tt / lam2);
  s.rcs_pp_db = 10.0 * std::log10(sig_pp / lam2);
  return s;
}

} // namespace cavrcs
