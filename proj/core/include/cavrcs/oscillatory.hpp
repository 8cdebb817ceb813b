#pragma once

#include <complex>

namespace cavrcs {

// S_{1/2}(p, R0) = int_{R0}^inf e^{i p z} / sqrt(z) dz, p > 0, p*R0 >= 20.
// Evaluated through the Fresnel-integral asymptotics in a cancellation-free
// form; absolute accuracy ~ (2 p R0)^{-6} relative.
std::complex<double> fresnel_tail(double p, double R0);

// S_{3/2}(p, R0) = int_{R0}^inf e^{i p z} z^{-3/2} dz via one integration by
// parts off fresnel_tail. Same preconditions.
std::complex<double> fresnel_tail_32(double p, double R0);

// I(R, c, kappa0) = int_0^R J0(c r) e^{i kappa0 r} dr.
// Regime 1 (c < threshold*2*pi, or whenever the asymptotic preconditions
// fail): composite Gauss-Legendre resolving both oscillation scales.
// Regime 2: I = I_inf - tail, with I_inf = 1/sqrt(c^2 - kappa0^2) and the
// tail from the J0 large-argument expansion reduced to S_{nu} moments.
std::complex<double> bessel_osc_integral(double R, double c, double kappa0,
                                         double regime_threshold = 10.0);

// Forced single-regime evaluations (used by the crossover validation).
// Regime 2 throws std::domain_error("regime overlap required") when
// |c - kappa0| <= 1e-6 * kappa0, and std::domain_error when the asymptotic
// preconditions (1 -+ kappa0/c) * c * R >= 20 fail.
std::complex<double> bessel_osc_regime1(double R, double c, double kappa0);
std::complex<double> bessel_osc_regime2(double R, double c, double kappa0);

bool bessel_regime2_applicable(double R, double c, double kappa0, double regime_threshold);

} // namespace cavrcs
