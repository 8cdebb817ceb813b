#include "cavrcs/tbc.hpp"

#include <cmath>
#include <numbers>

namespace cavrcs {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

inline double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// int_0^len e^{i w y} dy = len e^{i w len/2} sinc(w len/2); smooth through w=0.
inline cplx exp_integral(double w, double len) {
  const double half = 0.5 * w * len;
  return len * sinc(half) * cplx{std::cos(half), std::sin(half)};
}

} // namespace

cplx cos_exp_integral(int k, double alpha, double len) {
  const double mu = k * pi / len;
  return 0.5 * (exp_integral(alpha + mu, len) + exp_integral(alpha - mu, len));
}

cplx sin_exp_integral(int k, double alpha, double len) {
  const double mu = k * pi / len;
  return cplx{0.0, -0.5} * (exp_integral(alpha + mu, len) - exp_integral(alpha - mu, len));
}

TbcBlocks build_tbc_blocks(const ModeIndexSets& sets, const GramTensor& gram, double kappa0,
                           double a, double b, double h) {
  const int M = sets.M, N = sets.N;
  TbcBlocks t;
  t.F1.setZero(sets.size1(), sets.size1());
  t.H1.setZero(sets.size1(), sets.size1());
  t.G1.setZero(sets.size1(), sets.size2());
  t.F2.setZero(sets.size2(), sets.size2());
  t.G2.setZero(sets.size2(), sets.size2());
  t.H2.setZero(sets.size2(), sets.size1());
  t.I1.setZero(sets.size1(), sets.size3());
  t.I2.setZero(sets.size2(), sets.size3());
  t.F3.setZero(sets.size3(), sets.size1());
  t.G3.setZero(sets.size3(), sets.size2());

  // Basis normalizers: || cos(m.) sin(n.) ||^2 = ab/2 when the cos index is 0,
  // ab/4 otherwise (and symmetrically for the second family).
  auto qnorm = [&](int m) { return (m == 0) ? a * b / 2.0 : a * b / 4.0; };
  auto cnorm = [&](int n) { return (n == 0) ? a * b / 2.0 : a * b / 4.0; };
  const double k02 = kappa0 * kappa0;

  // Rows over set1: kernel-product couplings into the first component.
  for (int m = 0; m <= M; ++m)
    for (int n = 1; n <= N; ++n) {
      const int r = sets.flat1(m, n);
      const double s = h / qnorm(m);
      // Derivative couplings reduce, by parts, to the cos*cos tensor with the
      // derivative moved onto the row mode: factor -(n pi / b).
      const double red = -(n * pi / b);
      for (int k1 = 0; k1 <= M; ++k1)
        for (int k2 = 1; k2 <= N; ++k2) {
          const int c = sets.flat1(k1, k2);
          t.F1(r, c) = s * 2.0 * k02 * gram.at1(m, n, k1, k2);
          t.H1(r, c) = s * (2.0 * k2 * pi / b) * red * gram.at3(m, n, k1, k2);
        }
      for (int k1 = 1; k1 <= M; ++k1)
        for (int k2 = 0; k2 <= N; ++k2) {
          const int c = sets.flat2(k1, k2);
          t.G1(r, c) = s * (-2.0 * k1 * pi / a) * red * gram.at3(m, n, k1, k2);
        }
    }

  // Rows over set2.
  for (int m = 1; m <= M; ++m)
    for (int n = 0; n <= N; ++n) {
      const int r = sets.flat2(m, n);
      const double s = h / cnorm(n);
      const double red = -(m * pi / a);
      for (int k1 = 1; k1 <= M; ++k1)
        for (int k2 = 0; k2 <= N; ++k2) {
          const int c = sets.flat2(k1, k2);
          t.F2(r, c) = s * 2.0 * k02 * gram.at2(m, n, k1, k2);
          t.G2(r, c) = s * (2.0 * k1 * pi / a) * red * gram.at3(m, n, k1, k2);
        }
      for (int k1 = 0; k1 <= M; ++k1)
        for (int k2 = 1; k2 <= N; ++k2) {
          const int c = sets.flat1(k1, k2);
          t.H2(r, c) = s * (-2.0 * k2 * pi / b) * red * gram.at3(m, n, k1, k2);
        }
    }

  // Height-difference couplings: diagonal in the mode pair, scaled by the
  // horizontal wavenumber of the differentiated axis.
  for (int m = 1; m <= M; ++m)
    for (int n = 1; n <= N; ++n) {
      const int c3 = sets.flat3(m, n);
      t.I1(sets.flat1(m, n), c3) = m * pi * h / a;
      t.I2(sets.flat2(m, n), c3) = n * pi * h / b;
      t.F3(c3, sets.flat1(m, n)) = m * pi * h / a;
      t.G3(c3, sets.flat2(m, n)) = n * pi * h / b;
    }
  return t;
}

IncidentRhs build_incident_rhs(const ModeIndexSets& sets, const IncidentWave& wave, double a,
                               double b, double h) {
  const int M = sets.M, N = sets.N;
  IncidentRhs rhs;
  rhs.g1.setZero(sets.size1());
  rhs.g2.setZero(sets.size2());
  auto qnorm = [&](int m) { return (m == 0) ? a * b / 2.0 : a * b / 4.0; };
  auto cnorm = [&](int n) { return (n == 0) ? a * b / 2.0 : a * b / 4.0; };
  const cplx fac1 = 2.0 * cplx{0.0, 1.0} * (wave.alpha1 * wave.p[2] + wave.beta * wave.p[0]);
  const cplx fac2 = 2.0 * cplx{0.0, 1.0} * (wave.alpha2 * wave.p[2] + wave.beta * wave.p[1]);
  for (int m = 0; m <= M; ++m)
    for (int n = 1; n <= N; ++n)
      rhs.g1(sets.flat1(m, n)) = (h / qnorm(m)) * fac1 * cos_exp_integral(m, wave.alpha1, a) *
                                 sin_exp_integral(n, wave.alpha2, b);
  for (int m = 1; m <= M; ++m)
    for (int n = 0; n <= N; ++n)
      rhs.g2(sets.flat2(m, n)) = (h / cnorm(n)) * fac2 * sin_exp_integral(m, wave.alpha1, a) *
                                 cos_exp_integral(n, wave.alpha2, b);
  return rhs;
}

} // namespace cavrcs
