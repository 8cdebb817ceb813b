#include "cavrcs/oscillatory.hpp"

#include "gl16.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavrcs {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;
using detail::gl16;

inline cplx expi(double t) { return {std::cos(t), std::sin(t)}; }

} // namespace

cplx fresnel_tail(double p, double R0) {
  if (!(p > 0.0)) throw std::domain_error("fresnel_tail: p must be > 0");
  if (!(p * R0 >= 20.0)) throw std::domain_error("fresnel_tail: requires p*R0 >= 20");
  // With x = sqrt(2 p R0 / pi), t = pi x^2 = 2 p R0:
  //   S = sqrt(2 pi / p) e^{i p R0} (i f(x) + g(x)),
  // f, g the Fresnel auxiliary series (A&S 7.3.27/7.3.28), kept through 1/t^5:
  //   pi x f = 1 - 3/t^2 + 105/t^4, pi^2 x^3 g = 1 - 15/t^2 + 945/t^4.
  const double t = 2.0 * p * R0;
  const double x = std::sqrt(t / pi);
  const double t2 = t * t;
  const double f = (1.0 - 3.0 / t2 + 105.0 / (t2 * t2)) / (pi * x);
  const double g = (1.0 - 15.0 / t2 + 945.0 / (t2 * t2)) / (pi * pi * x * x * x);
  return std::sqrt(2.0 * pi / p) * expi(p * R0) * cplx{g, f};
}

cplx fresnel_tail_32(double p, double R0) {
  // By parts: S_{3/2} = 2 e^{i p R0} / sqrt(R0) + 2 i p S_{1/2}.
  return 2.0 * expi(p * R0) / std::sqrt(R0) + cplx{0.0, 2.0 * p} * fresnel_tail(p, R0);
}

cplx bessel_osc_regime1(double R, double c, double kappa0) {
  if (!(R > 0.0)) throw std::domain_error("bessel_osc_integral: R must be > 0");
  // Panel count resolves the combined phase (c + kappa0) R; >= 3 nodes per
  // radian keeps 16-point panels at rounding-level accuracy.
  const int panels = std::max(2, static_cast<int>(std::ceil((c + kappa0) * R / (2.0 * pi))) + 2);
  const double dw = R / panels;
  cplx sum{};
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * dw;
    const double half = 0.5 * dw;
    cplx acc{};
    for (int q = 0; q < 16; ++q) {
      const double r = mid + half * gl16.x[q];
      acc += gl16.w[q] * boost::math::cyl_bessel_j(0, c * r) * expi(kappa0 * r);
    }
    sum += acc * half;
  }
  return sum;
}

namespace {

// S_nu(p) = int_{R0}^inf e^{i p z} z^{-nu} dz for nu = 1/2..7/2, p > 0,
// by the ascending by-parts chain off S_{1/2}.
struct MomentChain {
  cplx s12, s32, s52, s72;
};

MomentChain moments(double p, double R0) {
  MomentChain m;
  const cplx e = expi(p * R0);
  const double rt = std::sqrt(R0);
  m.s12 = fresnel_tail(p, R0);
  m.s32 = 2.0 * e / rt + cplx{0, 2.0 * p} * m.s12;
  m.s52 = (2.0 / 3.0) * e / (rt * R0) + cplx{0, 2.0 * p / 3.0} * m.s32;
  m.s72 = (2.0 / 5.0) * e / (rt * R0 * R0) + cplx{0, 2.0 * p / 5.0} * m.s52;
  return m;
}

} // namespace

bool bessel_regime2_applicable(double R, double c, double kappa0, double regime_threshold) {
  if (!(c >= regime_threshold * 2.0 * pi)) return false;
  if (std::abs(c - kappa0) <= 1e-6 * kappa0) return false;
  const double R0 = c * R;
  const double pm = 1.0 - kappa0 / c, pp = 1.0 + kappa0 / c;
  return pm > 0.0 && pm * R0 >= 20.0 && pp * R0 >= 20.0;
}

cplx bessel_osc_regime2(double R, double c, double kappa0) {
  if (std::abs(c - kappa0) <= 1e-6 * kappa0)
    throw std::domain_error("bessel_osc_integral: regime overlap required (c too close to kappa0)");
  if (!(c > kappa0)) throw std::domain_error("bessel_osc_integral: regime 2 requires c > kappa0");
  const double R0 = c * R;
  const double pp = 1.0 + kappa0 / c, pm = 1.0 - kappa0 / c;
  if (!(pm * R0 >= 20.0 && pp * R0 >= 20.0))
    throw std::domain_error("bessel_osc_integral: asymptotic tail needs (1 -+ kappa0/c)*c*R >= 20");

  // tail = (1/c) int_{R0}^inf J0(z) e^{i (kappa0/c) z} dz with
  // J0(z) ~ sqrt(2/(pi z)) [P cos(z - pi/4) + Q sin(z - pi/4)],
  // P = 1 - 9/(128 z^2), Q = 1/(8 z) - 75/(1024 z^3)  (A&S 9.2.9/9.2.10).
  // cos/sin split into e^{+-i(z - pi/4)}; the decaying-phase pieces are
  // conjugates of ascending-phase moments at rate pm because the remaining
  // integrand is real.
  const cplx ap = expi(-pi / 4), am = expi(pi / 4); // phase offsets e^{-+i pi/4}
  const MomentChain Mp = moments(pp, R0);
  const MomentChain Mm = moments(pm, R0);

  const cplx cos_part =
      0.5 * (ap * (Mp.s12 - (9.0 / 128.0) * Mp.s52) +
             am * std::conj(Mm.s12 - (9.0 / 128.0) * Mm.s52));
  const cplx sin_part =
      cplx{0, -0.5} * (ap * ((1.0 / 8.0) * Mp.s32 - (75.0 / 1024.0) * Mp.s72) -
                       am * std::conj((1.0 / 8.0) * Mm.s32 - (75.0 / 1024.0) * Mm.s72));

  const cplx tail = std::sqrt(2.0 / pi) / c * (cos_part + sin_part);
  const cplx i_inf = 1.0 / std::sqrt(c * c - kappa0 * kappa0);
  return i_inf - tail;
}

cplx bessel_osc_integral(double R, double c, double kappa0, double regime_threshold) {
  if (bessel_regime2_applicable(R, c, kappa0, regime_threshold))
    return bessel_osc_regime2(R, c, kappa0);
  return bessel_osc_regime1(R, c, kappa0);
}

} // namespace cavrcs
