#pragma once

#include "cavrcs/config.hpp"
#include "cavrcs/interface_system.hpp"
#include "cavrcs/modes.hpp"

#include <array>

namespace cavrcs {

// Radiation vector of the aperture field at observation direction xhat
// (upper half space): closed-form mode transforms against e^{-i kappa0 xhat.y}
// assembled into (-i kappa0 / 2 pi) (V x xhat) with V built from the two
// tangential component sums.
std::array<cplx, 3> radiation_vector(const ApertureField& f, double a, double b, double kappa0,
                                     const std::array<double, 3>& xhat);

// Bistatic cross section for a real receive polarization: 4 pi |A . pol|^2.
double cross_section(const std::array<cplx, 3>& A, const std::array<double, 3>& pol);

struct RcsSample {
  double theta_deg = 0, phi_deg = 0, alpha_deg = 0;
  double sigma = 0;              // configured polarization, co-polarized receive
  double sigma_over_lambda2 = 0;
  double rcs_tt_db = 0;          // alpha = 0 solve, theta-hat receive, 10 log10(sigma/lambda^2)
  double rcs_pp_db = 0;          // alpha = 90 deg solve, phi-hat receive
};

// Monostatic sample at one incidence: three solves against the factored
// system (configured alpha plus the two principal polarizations), observed
// back along the arrival direction.
RcsSample backscatter_sample(const InterfaceSystem& sys, const CavityConfig& cfg,
                             double theta_deg);

} // namespace cavrcs
