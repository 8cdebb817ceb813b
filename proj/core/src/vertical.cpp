#include "cavrcs/vertical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cavrcs {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

// Product kept as mantissa * 2^e so pivot products over thousands of levels
// neither overflow nor lose the exponent (1/product underflowing to zero is
// fine: it means the coupling is evanescent below measurable level).
struct ScaledCplx {
  cplx m{1.0, 0.0};
  long e = 0;
  void mul(cplx v) {
    m *= v;
    const double am = std::abs(m);
    if (am == 0.0 || !std::isfinite(am)) return;
    const int k = std::ilogb(am);
    if (k > 60 || k < -60) {
      m = {std::ldexp(m.real(), -k), std::ldexp(m.imag(), -k)};
      e += k;
    }
  }
  // this / other, collapsed to a plain complex; deep underflow flushes to 0.
  cplx over(const ScaledCplx& other) const {
    const cplx q = m / other.m;
    const long ex = e - other.e;
    if (ex < -1100) return {};
    if (ex > 1000) throw std::overflow_error("vertical: interface coupling overflow");
    return {std::ldexp(q.real(), static_cast<int>(ex)),
            std::ldexp(q.imag(), static_cast<int>(ex))};
  }
};

[[noreturn]] void resonance_error(int m, int n) {
  throw std::runtime_error("vertical resonance at mode (" + std::to_string(m) + ", " +
                           std::to_string(n) +
                           "): the grid sees a resonant vertical wavenumber; change J or the "
                           "cavity depth slightly");
}

} // namespace

cplx vertical_step_d(int m, int n, double a, double b, double h, double kappa0, cplx eps) {
  const double lam = (m * pi / a) * (m * pi / a) + (n * pi / b) * (n * pi / b);
  return h * h * (kappa0 * kappa0 * eps - lam);
}

cplx tridiag_lu_lastpivot(int J, cplx d, TridiagPattern pattern, cplx beta,
                          std::vector<cplx>* pivots) {
  if (J < 1) throw std::invalid_argument("tridiag_lu_lastpivot: J must be >= 1");
  cplx first;
  switch (pattern) {
    case TridiagPattern::Dirichlet: first = -2.0 + d; break;
    case TridiagPattern::Neumann: first = -1.0 + d; break;
    case TridiagPattern::LayeredTop1:
    case TridiagPattern::LayeredTop3: first = 1.0 / beta - 2.0 + d; break;
  }
  if (pivots) {
    pivots->clear();
    pivots->reserve(J);
  }
  cplx p = first;
  for (int j = 1;; ++j) {
    if (p == 0.0) throw std::domain_error("tridiag_lu_lastpivot: zero pivot");
    if (pivots) pivots->push_back(p);
    if (j == J) break;
    p = (-2.0 + d) - 1.0 / p;
  }
  return p;
}

std::vector<cplx> recover_chain(const std::vector<cplx>& pivots, cplx top) {
  const int J = static_cast<int>(pivots.size());
  std::vector<cplx> x(J);
  cplx cur = top;
  for (int j = J - 1; j >= 0; --j) {
    cur = -cur / pivots[j];
    x[j] = cur;
  }
  return x;
}

DtnTable build_dtn_table(const CavityConfig& cfg) {
  DtnTable t;
  t.M = cfg.M;
  t.N = cfg.N;
  t.J = cfg.J;
  t.I_top = cfg.layered ? cfg.I_top : 0;
  t.layered = cfg.layered;
  const double h = cfg.h();
  const double a = cfg.a, b = cfg.b;
  const double kappa0 = cfg.kappa0;
  const int rect = (cfg.M + 1) * (cfg.N + 1);
  const int top = t.top_len();
  t.r12.assign(rect, {});
  t.r3.assign(rect, {});
  t.s1.assign(rect, {});
  t.s2.assign(rect, {});
  t.piv12.assign(static_cast<size_t>(rect) * top, {});
  t.piv3.assign(static_cast<size_t>(rect) * top, {});

  std::vector<cplx> piv;
  if (!cfg.layered) {
    for (int m = 0; m <= cfg.M; ++m)
      for (int n = 0; n <= cfg.N; ++n) try {
          const cplx d = vertical_step_d(m, n, a, b, h, kappa0, cfg.eps1);
          t.r12[t.idx(m, n)] = tridiag_lu_lastpivot(cfg.J, d, TridiagPattern::Dirichlet, {}, &piv);
          std::copy(piv.begin(), piv.end(),
                    t.piv12.begin() + static_cast<size_t>(t.idx(m, n)) * top);
          t.r3[t.idx(m, n)] = tridiag_lu_lastpivot(cfg.J, d, TridiagPattern::Neumann, {}, &piv);
          std::copy(piv.begin(), piv.end(),
                    t.piv3.begin() + static_cast<size_t>(t.idx(m, n)) * top);
        } catch (const std::domain_error&) {
          resonance_error(m, n); // exact zero pivot mid-elimination
        }
  } else {
    const int I = cfg.I_top; // aperture-side (upper material) interior levels
    t.piv12_low.assign(static_cast<size_t>(rect) * cfg.J, {});
    t.piv3_low.assign(static_cast<size_t>(rect) * cfg.J, {});
    t.beta1.assign(rect, {});
    t.beta3.assign(rect, {});
    t.dbase.assign(rect, {});
    const cplx rho = cfg.eps1 / cfg.eps2;
    t.eps_ratio = rho;
    for (int m = 0; m <= cfg.M; ++m)
      for (int n = 0; n <= cfg.N; ++n) try {
        const int ix = t.idx(m, n);
        const cplx d1 = vertical_step_d(m, n, a, b, h, kappa0, cfg.eps1);
        const cplx d2 = vertical_step_d(m, n, a, b, h, kappa0, cfg.eps2);
        // Bottom-material eliminations close the chains at the material
        // interface; the interface row itself folds into beta with half-cell
        // material averages on the second-order stencil.
        const cplx r1 = tridiag_lu_lastpivot(cfg.J, d2, TridiagPattern::Dirichlet, {}, &piv);
        std::copy(piv.begin(), piv.end(),
                  t.piv12_low.begin() + static_cast<size_t>(ix) * cfg.J);
        const cplx r2 = tridiag_lu_lastpivot(cfg.J, d2, TridiagPattern::Neumann, {}, &piv);
        std::copy(piv.begin(), piv.end(), t.piv3_low.begin() + static_cast<size_t>(ix) * cfg.J);
        const cplx beta1 = 1.0 / r1 + 2.0 - 0.5 * (d1 + d2);
        const cplx beta3 = (1.0 / r2 + 1.0 - 0.5 * d2) * rho + 1.0 - 0.5 * d1;
        t.beta1[ix] = beta1;
        t.beta3[ix] = beta3;
        t.r12[ix] = tridiag_lu_lastpivot(I, d1, TridiagPattern::LayeredTop1, beta1, &piv);
        std::copy(piv.begin(), piv.end(), t.piv12.begin() + static_cast<size_t>(ix) * top);
        const std::vector<cplx> piv13(piv);
        t.r3[ix] = tridiag_lu_lastpivot(I, d1, TridiagPattern::LayeredTop3, beta3, &piv);
        std::copy(piv.begin(), piv.end(), t.piv3.begin() + static_cast<size_t>(ix) * top);
        // Rank-one coupling of components 1,2 to component 3, produced by the
        // tangential-gradient jump at the interface: a signed corner entry of
        // the inverse upper component-3 chain (cofactor over pivot product),
        // propagated to the last row through the component-1 chain. Scaled
        // arithmetic; for evanescent modes the result is an honest zero.
        ScaledCplx det4, ltil, unit;
        for (const cplx& p : piv) det4.mul(p);
        for (int j = 0; j + 1 < I; ++j) ltil.mul(-1.0 / piv13[j]);
        const double sign = (I % 2 == 0) ? 1.0 : -1.0;
        const cplx pre = (rho - 1.0) * sign / (beta1 * beta3);
        unit.mul(pre);
        t.dbase[ix] = unit.over(det4);
        ltil.mul(-pre);
        t.s1[ix] = ltil.over(det4) * (m * pi * h / a);
        t.s2[ix] = ltil.over(det4) * (n * pi * h / b);
      } catch (const std::domain_error&) {
        resonance_error(m, n); // exact zero pivot mid-elimination
      }
  }

  // Resonance scan over the indices the interface system actually uses.
  double max12 = 0.0, max3 = 0.0;
  for (int m = 0; m <= cfg.M; ++m)
    for (int n = 0; n <= cfg.N; ++n) {
      if (m + n > 0) max12 = std::max(max12, std::abs(t.r12[t.idx(m, n)]));
      if (m >= 1 && n >= 1) max3 = std::max(max3, std::abs(t.r3[t.idx(m, n)]));
    }
  for (int m = 0; m <= cfg.M; ++m)
    for (int n = 0; n <= cfg.N; ++n) {
      if (m + n > 0) {
        const double v = std::abs(t.r12[t.idx(m, n)]);
        if (!std::isfinite(v) || v < 1e-12 * max12) resonance_error(m, n);
      }
      if (m >= 1 && n >= 1) {
        const double v = std::abs(t.r3[t.idx(m, n)]);
        if (!std::isfinite(v) || v < 1e-12 * max3) resonance_error(m, n);
      }
    }
  return t;
}

namespace {

// Back-substitute one upper-material chain with the rank-one interface RHS:
// (A + D) x = -e_last * top + e_1 * f1. Returns x_1..x_I.
std::vector<cplx> recover_top_chain(const cplx* pivots, int I, cplx top, cplx f1) {
  std::vector<cplx> y(I);
  y[0] = f1;
  for (int j = 1; j < I; ++j) y[j] = -y[j - 1] / pivots[j - 1];
  y[I - 1] += -top;
  std::vector<cplx> x(I);
  x[I - 1] = y[I - 1] / pivots[I - 1];
  for (int j = I - 2; j >= 0; --j) x[j] = (y[j] - x[j + 1]) / pivots[j];
  return x;
}

} // namespace

VolumeField recover_interior(const ApertureField& aperture, const DtnTable& dtn,
                             const CavityConfig& cfg) {
  const ModeIndexSets sets = aperture.sets;
  const double h = cfg.h();
  const int J = dtn.J;
  const int top = dtn.top_len();

  if (!dtn.layered) {
    // Levels 0..J+1: floor, J interior, aperture.
    VolumeField v = VolumeField::zero(sets, J + 2);
    auto fill = [&](const std::vector<cplx>& pivots_all, auto&& put, int flat, int rect_ix,
                    cplx top_val, bool neumann_floor) {
      const cplx* piv = pivots_all.data() + static_cast<size_t>(rect_ix) * top;
      cplx cur = top_val;
      for (int j = J; j >= 1; --j) {
        cur = -cur / piv[j - 1];
        put(j, flat, cur);
      }
      if (neumann_floor) put(0, flat, cur);
    };
    for (int m = 0; m <= sets.M; ++m)
      for (int n = 1; n <= sets.N; ++n)
        fill(dtn.piv12, [&](int lvl, int f, cplx val) { v.at1(lvl, f) = val; },
             sets.flat1(m, n), dtn.idx(m, n), aperture.e1[sets.flat1(m, n)], false);
    for (int m = 1; m <= sets.M; ++m)
      for (int n = 0; n <= sets.N; ++n)
        fill(dtn.piv12, [&](int lvl, int f, cplx val) { v.at2(lvl, f) = val; },
             sets.flat2(m, n), dtn.idx(m, n), aperture.e2[sets.flat2(m, n)], false);
    for (int m = 1; m <= sets.M; ++m)
      for (int n = 1; n <= sets.N; ++n)
        fill(dtn.piv3, [&](int lvl, int f, cplx val) { v.at3(lvl, f) = val; },
             sets.flat3(m, n), dtn.idx(m, n), aperture.e3[sets.flat3(m, n)], true);
    for (int i = 0; i < sets.size1(); ++i) v.at1(J + 1, i) = aperture.e1[i];
    for (int i = 0; i < sets.size2(); ++i) v.at2(J + 1, i) = aperture.e2[i];
    for (int i = 0; i < sets.size3(); ++i) v.at3(J + 1, i) = aperture.e3[i];
    return v;
  }

  // Layered levels, bottom-up: 0 floor, 1..J bottom interior, J+1 material
  // interface (upper-side values), J+2..J+I_top+1 upper interior,
  // J+I_top+2 aperture.
  const int I = dtn.I_top;
  const int iface = J + 1, aper = J + I + 2;
  VolumeField v = VolumeField::zero(sets, aper + 1);
  const cplx rho = dtn.eps_ratio;

  for (int m = 1; m <= sets.M; ++m)
    for (int n = 1; n <= sets.N; ++n) {
      const int f = sets.flat3(m, n);
      const int ix = dtn.idx(m, n);
      const cplx e3a = aperture.e3[f];
      v.at3(aper, f) = e3a;
      const cplx* piv = dtn.piv3.data() + static_cast<size_t>(ix) * top;
      const std::vector<cplx> x = recover_chain(std::vector<cplx>(piv, piv + I), e3a);
      for (int j = 1; j <= I; ++j) v.at3(iface + j, f) = x[j - 1];
      const cplx u30 = x[0] / dtn.beta3[ix];
      v.at3(iface, f) = u30;
      // Bottom side of the interface carries the permittivity jump.
      const cplx* lowpiv = dtn.piv3_low.data() + static_cast<size_t>(ix) * J;
      cplx cur = rho * u30;
      for (int j = J; j >= 1; --j) {
        cur = -cur / lowpiv[j - 1];
        v.at3(j, f) = cur;
      }
      v.at3(0, f) = cur; // discrete Neumann floor
    }

  for (int m = 0; m <= sets.M; ++m)
    for (int n = 1; n <= sets.N; ++n) {
      const int f = sets.flat1(m, n);
      const int ix = dtn.idx(m, n);
      const cplx ea = aperture.e1[f];
      const cplx e3a = (m >= 1) ? aperture.e3[sets.flat3(m, n)] : cplx{};
      const cplx d_l = dtn.dbase[ix] * (m * pi * h / cfg.a);
      const std::vector<cplx> x = recover_top_chain(
          dtn.piv12.data() + static_cast<size_t>(ix) * top, I, ea, -d_l * e3a);
      v.at1(aper, f) = ea;
      for (int j = 1; j <= I; ++j) v.at1(iface + j, f) = x[j - 1];
      const cplx u30 = (m >= 1 && n >= 1) ? v.at3(iface, sets.flat3(m, n)) : cplx{};
      const cplx u10 = (x[0] + (rho - 1.0) * (m * pi * h / cfg.a) * u30) / dtn.beta1[ix];
      v.at1(iface, f) = u10;
      const cplx* lowpiv = dtn.piv12_low.data() + static_cast<size_t>(ix) * J;
      cplx cur = u10;
      for (int j = J; j >= 1; --j) {
        cur = -cur / lowpiv[j - 1];
        v.at1(j, f) = cur;
      }
    }
  for (int m = 1; m <= sets.M; ++m)
    for (int n = 0; n <= sets.N; ++n) {
      const int f = sets.flat2(m, n);
      const int ix = dtn.idx(m, n);
      const cplx ea = aperture.e2[f];
      const cplx e3a = (n >= 1) ? aperture.e3[sets.flat3(m, n)] : cplx{};
      const cplx d_l = dtn.dbase[ix] * (n * pi * h / cfg.b);
      const std::vector<cplx> x = recover_top_chain(
          dtn.piv12.data() + static_cast<size_t>(ix) * top, I, ea, -d_l * e3a);
      v.at2(aper, f) = ea;
      for (int j = 1; j <= I; ++j) v.at2(iface + j, f) = x[j - 1];
      const cplx u30 = (m >= 1 && n >= 1) ? v.at3(iface, sets.flat3(m, n)) : cplx{};
      const cplx u20 = (x[0] + (rho - 1.0) * (n * pi * h / cfg.b) * u30) / dtn.beta1[ix];
      v.at2(iface, f) = u20;
      const cplx* lowpiv = dtn.piv12_low.data() + static_cast<size_t>(ix) * J;
      cplx cur = u20;
      for (int j = J; j >= 1; --j) {
        cur = -cur / lowpiv[j - 1];
        v.at2(j, f) = cur;
      }
    }
  return v;
}

} // namespace cavrcs
