#include "cavrcs/gram.hpp"

#include "gl16.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cavrcs {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;
using detail::gl16;

inline cplx expi(double t) { return {std::cos(t), std::sin(t)}; }

// Distance from x (inside [0,a]x[0,b]) to the rectangle boundary along (c, s).
double ray_exit(double x1, double x2, double c, double s, double a, double b) {
  double t = std::numeric_limits<double>::infinity();
  if (c > 0)
    t = std::min(t, (a - x1) / c);
  else if (c < 0)
    t = std::min(t, -x1 / c);
  if (s > 0)
    t = std::min(t, (b - x2) / s);
  else if (s < 0)
    t = std::min(t, -x2 / s);
  return t;
}

// Angular arcs between the four corner directions; ray_exit is smooth on each.
struct Arcs {
  double lo[4], hi[4];
};
Arcs corner_arcs(double x1, double x2, double a, double b) {
  double psi[4] = {std::atan2(0.0 - x2, 0.0 - x1), std::atan2(0.0 - x2, a - x1),
                   std::atan2(b - x2, 0.0 - x1), std::atan2(b - x2, a - x1)};
  for (double& p : psi)
    if (p < 0) p += 2.0 * pi;
  std::sort(psi, psi + 4);
  Arcs arcs;
  for (int i = 0; i < 4; ++i) {
    arcs.lo[i] = psi[i];
    arcs.hi[i] = (i < 3) ? psi[i + 1] : psi[0] + 2.0 * pi;
  }
  return arcs;
}

// cos(k t), sin(k t) for k = 0..K via the Chebyshev recurrence.
void trig_vectors(double t, int K, double* c, double* s) {
  c[0] = 1.0;
  s[0] = 0.0;
  if (K == 0) return;
  const double c1 = std::cos(t), s1 = std::sin(t);
  c[1] = c1;
  s[1] = s1;
  for (int k = 2; k <= K; ++k) {
    c[k] = 2.0 * c1 * c[k - 1] - c[k - 2];
    s[k] = 2.0 * c1 * s[k - 1] - s[k - 2];
  }
}

// Composite Gauss-Legendre nodes over explicit panel boundaries.
template <typename F>
void composite_gl(const std::vector<double>& bounds, F&& f) {
  for (size_t p = 0; p + 1 < bounds.size(); ++p) {
    const double mid = 0.5 * (bounds[p] + bounds[p + 1]);
    const double half = 0.5 * (bounds[p + 1] - bounds[p]);
    for (int q = 0; q < 16; ++q) f(mid + half * gl16.x[q], half * gl16.w[q]);
  }
}

std::vector<double> uniform_bounds(double lo, double hi, int panels) {
  std::vector<double> b(panels + 1);
  for (int i = 0; i <= panels; ++i) b[i] = lo + (hi - lo) * i / panels;
  return b;
}

// Panel edges clustered quadratically toward both axis ends; the aperture
// integrands lose smoothness (d log d type) at the rectangle boundary.
std::vector<double> clustered_bounds(double len, int panels) {
  std::vector<double> b(panels + 1);
  for (int i = 0; i <= panels; ++i) b[i] = len * 0.5 * (1.0 - std::cos(pi * i / panels));
  return b;
}

int rho_panels(double rho_max, double phase_rate, int level) {
  return std::max(1, static_cast<int>(std::ceil(phase_rate * rho_max / (2.0 * pi))) + 1 + level);
}

} // namespace

GramTensor oracle_gram_level(int M, int N, double kappa0, double a, double b, int level) {
  if (M < 0 || N < 0 || level < 0) throw std::invalid_argument("oracle_gram_level: bad arguments");
  GramTensor t;
  t.M = M;
  t.N = N;
  const int side = t.side();
  t.i1.assign(static_cast<size_t>(side) * side, {});
  t.i2.assign(static_cast<size_t>(side) * side, {});
  t.i3.assign(static_cast<size_t>(side) * side, {});

  const int pan_out = 4 + std::max(M, N) / 2 + 2 * level;
  const int pan_phi = 1 + level;
  const double phase_rate = kappa0 + pi * (M / a + N / b);
  const auto bx = clustered_bounds(a, pan_out), by = clustered_bounds(b, pan_out);

  std::vector<double> c1(M + 1), s1(M + 1), c2(N + 1), s2(N + 1);
  std::vector<double> c1x(M + 1), s1x(M + 1), c2x(N + 1), s2x(N + 1);
  std::vector<cplx> jcc(side), jcs(side), jsc(side);

  composite_gl(bx, [&](double x1, double w1) {
    composite_gl(by, [&](double x2, double w2) {
      std::fill(jcc.begin(), jcc.end(), cplx{});
      std::fill(jcs.begin(), jcs.end(), cplx{});
      std::fill(jsc.begin(), jsc.end(), cplx{});
      const Arcs arcs = corner_arcs(x1, x2, a, b);
      for (int arc = 0; arc < 4; ++arc)
        composite_gl(uniform_bounds(arcs.lo[arc], arcs.hi[arc], pan_phi),
                     [&](double phi, double wphi) {
                       const double cph = std::cos(phi), sph = std::sin(phi);
                       const double rmax = ray_exit(x1, x2, cph, sph, a, b);
                       composite_gl(
                           uniform_bounds(0.0, rmax, rho_panels(rmax, phase_rate, level)),
                           [&](double rho, double wr) {
                             const double y1 = x1 + rho * cph, y2 = x2 + rho * sph;
                             trig_vectors(pi * y1 / a, M, c1.data(), s1.data());
                             trig_vectors(pi * y2 / b, N, c2.data(), s2.data());
                             const cplx kv = wphi * wr / (4.0 * pi) * expi(kappa0 * rho);
                             for (int k1 = 0; k1 <= M; ++k1)
                               for (int k2 = 0; k2 <= N; ++k2) {
                                 const int col = k1 * (N + 1) + k2;
                                 jcc[col] += kv * (c1[k1] * c2[k2]);
                                 jcs[col] += kv * (c1[k1] * s2[k2]);
                                 jsc[col] += kv * (s1[k1] * c2[k2]);
                               }
                           });
                     });
      trig_vectors(pi * x1 / a, M, c1x.data(), s1x.data());
      trig_vectors(pi * x2 / b, N, c2x.data(), s2x.data());
      const double wx = w1 * w2;
      for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= N; ++n) {
          const size_t base = static_cast<size_t>(t.row(m, n)) * side;
          const double occ = wx * c1x[m] * c2x[n];
          const double ocs = wx * c1x[m] * s2x[n];
          const double osc = wx * s1x[m] * c2x[n];
          for (int col = 0; col < side; ++col) {
            t.i1[base + col] += ocs * jcs[col];
            t.i2[base + col] += osc * jsc[col];
            t.i3[base + col] += occ * jcc[col];
          }
        }
    });
  });
  return t;
}

GramTensor oracle_gram(int M, int N, double kappa0, double a, double b, double tol) {
  GramTensor prev = oracle_gram_level(M, N, kappa0, a, b, 0);
  for (int level = 1; level <= 2; ++level) {
    GramTensor next = oracle_gram_level(M, N, kappa0, a, b, level);
    double diff = 0.0, scale = 0.0;
    auto fold = [&](const std::vector<cplx>& p, const std::vector<cplx>& q) {
      for (size_t i = 0; i < p.size(); ++i) {
        diff = std::max(diff, std::abs(p[i] - q[i]));
        scale = std::max(scale, std::abs(q[i]));
      }
    };
    fold(prev.i1, next.i1);
    fold(prev.i2, next.i2);
    fold(prev.i3, next.i3);
    if (diff <= tol * scale) return next;
    prev = std::move(next);
  }
  throw std::runtime_error("oracle_gram: tolerance not reached at the highest refinement level");
}

std::vector<cplx> oracle_gradient_form(int M, int N, double kappa0, double a, double b, int axis,
                                       int level) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("oracle_gradient_form: axis must be 1 or 2");
  const int side = (M + 1) * (N + 1);
  std::vector<cplx> out(static_cast<size_t>(side) * side, cplx{});

  const int pan_out = 4 + std::max(M, N) / 2 + 2 * level;
  const int pan_phi = 2 + level;
  const double phase_rate = kappa0 + pi * (M / a + N / b);
  const auto bx = clustered_bounds(a, pan_out), by = clustered_bounds(b, pan_out);

  std::vector<double> c1(M + 1), s1(M + 1), c2(N + 1), s2(N + 1);
  std::vector<double> c1x(M + 1), s1x(M + 1), c2x(N + 1), s2x(N + 1);
  std::vector<cplx> inner(side);

  composite_gl(bx, [&](double x1, double w1) {
    composite_gl(by, [&](double x2, double w2) {
      std::fill(inner.begin(), inner.end(), cplx{});
      trig_vectors(pi * x1 / a, M, c1x.data(), s1x.data());
      trig_vectors(pi * x2 / b, N, c2x.data(), s2x.data());
      const Arcs arcs = corner_arcs(x1, x2, a, b);
      cplx ang_const{}; // angular integral multiplying the mode value at x
      for (int arc = 0; arc < 4; ++arc)
        composite_gl(
            uniform_bounds(arcs.lo[arc], arcs.hi[arc], pan_phi), [&](double phi, double wphi) {
              const double cph = std::cos(phi), sph = std::sin(phi);
              const double dirfac = (axis == 1) ? -cph : -sph;
              const double rmax = ray_exit(x1, x2, cph, sph, a, b);
              // Subtracted part: [mode(y) - mode(x)] against the 1/rho kernel.
              cplx kreg{};
              composite_gl(uniform_bounds(0.0, rmax, rho_panels(rmax, phase_rate, level)),
                           [&](double rho, double wr) {
                             const double y1 = x1 + rho * cph, y2 = x2 + rho * sph;
                             trig_vectors(pi * y1 / a, M, c1.data(), s1.data());
                             trig_vectors(pi * y2 / b, N, c2.data(), s2.data());
                             const cplx ez = expi(kappa0 * rho);
                             const cplx grad = (cplx{0.0, kappa0 * rho} - 1.0) * ez;
                             const cplx kv =
                                 wphi * wr * dirfac / (4.0 * pi * rho) * grad;
                             for (int k1 = 0; k1 <= M; ++k1)
                               for (int k2 = 0; k2 <= N; ++k2)
                                 inner[k1 * (N + 1) + k2] +=
                                     kv * (c1[k1] * c2[k2] - c1x[k1] * c2x[k2]);
                             // Regularized radial moment for the constant part:
                             // ((i kappa rho - 1) e^{i kappa rho} + 1) / rho.
                             kreg += wr * (grad + 1.0) / rho;
                           });
              // Constant-part angular weight; the log(eps) pieces cancel over
              // the full angle, leaving kreg - log(rmax) per direction.
              ang_const += wphi * dirfac * (kreg - std::log(rmax));
            });
      ang_const /= 4.0 * pi;
      for (int k1 = 0; k1 <= M; ++k1)
        for (int k2 = 0; k2 <= N; ++k2)
          inner[k1 * (N + 1) + k2] += ang_const * (c1x[k1] * c2x[k2]);
      const double wx = w1 * w2;
      for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= N; ++n) {
          const double om = (axis == 1) ? wx * s1x[m] * c2x[n] : wx * c1x[m] * s2x[n];
          const size_t base = static_cast<size_t>(m * (N + 1) + n) * side;
          for (int col = 0; col < side; ++col) out[base + col] += om * inner[col];
        }
    });
  });
  return out;
}

} // namespace cavrcs
