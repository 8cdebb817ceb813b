#include "cavrcs/modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavrcs {

ApertureField ApertureField::zero(const ModeIndexSets& sets) {
  ApertureField f;
  f.sets = sets;
  f.e1.assign(sets.size1(), cplx{});
  f.e2.assign(sets.size2(), cplx{});
  f.e3.assign(sets.size3(), cplx{});
  return f;
}

VolumeField VolumeField::zero(const ModeIndexSets& sets, int levels) {
  VolumeField v;
  v.sets = sets;
  v.levels = levels;
  v.e1.assign(static_cast<size_t>(levels) * sets.size1(), cplx{});
  v.e2.assign(static_cast<size_t>(levels) * sets.size2(), cplx{});
  v.e3.assign(static_cast<size_t>(levels) * sets.size3(), cplx{});
  return v;
}

ApertureGridField synthesize_aperture(const ApertureField& f, double a, double b, int P1,
                                      int P2) {
  if (P1 < 1 || P2 < 1) throw std::invalid_argument("synthesize_aperture: grid must be >= 1");
  const auto& s = f.sets;
  const int n1 = P1 + 1, n2 = P2 + 1;
  ApertureGridField out;
  out.P1 = P1;
  out.P2 = P2;
  out.e1.assign(static_cast<size_t>(n1) * n2, cplx{});
  out.e2.assign(static_cast<size_t>(n1) * n2, cplx{});
  out.e3.assign(static_cast<size_t>(n1) * n2, cplx{});

  // Per-axis trig tables: trig[m][i] for mode m at grid point i.
  const double pi = std::numbers::pi;
  std::vector<double> cos1((s.M + 1) * n1), sin1((s.M + 1) * n1);
  std::vector<double> cos2((s.N + 1) * n2), sin2((s.N + 1) * n2);
  for (int m = 0; m <= s.M; ++m)
    for (int i = 0; i < n1; ++i) {
      const double t = m * pi * (double(i) / P1);
      cos1[m * n1 + i] = std::cos(t);
      sin1[m * n1 + i] = std::sin(t);
    }
  for (int n = 0; n <= s.N; ++n)
    for (int j = 0; j < n2; ++j) {
      const double t = n * pi * (double(j) / P2);
      cos2[n * n2 + j] = std::cos(t);
      sin2[n * n2 + j] = std::sin(t);
    }
  (void)a;
  (void)b;

  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const size_t g = static_cast<size_t>(i) * n2 + j;
      cplx v1{}, v2{}, v3{};
      for (int m = 0; m <= s.M; ++m)
        for (int n = 1; n <= s.N; ++n)
          v1 += f.e1[s.flat1(m, n)] * (cos1[m * n1 + i] * sin2[n * n2 + j]);
      for (int m = 1; m <= s.M; ++m)
        for (int n = 0; n <= s.N; ++n)
          v2 += f.e2[s.flat2(m, n)] * (sin1[m * n1 + i] * cos2[n * n2 + j]);
      for (int m = 1; m <= s.M; ++m)
        for (int n = 1; n <= s.N; ++n)
          v3 += f.e3[s.flat3(m, n)] * (sin1[m * n1 + i] * sin2[n * n2 + j]);
      out.e1[g] = v1;
      out.e2[g] = v2;
      out.e3[g] = v3;
    }
  return out;
}

double discrete_divergence_residual(const ApertureField& field, const std::vector<cplx>& dE3_dx3,
                                    double a, double b) {
  const auto& s = field.sets;
  if (static_cast<int>(dE3_dx3.size()) != s.size3())
    throw std::invalid_argument("discrete_divergence_residual: dE3_dx3 size mismatch");
  const double pi = std::numbers::pi;
  double worst = 0.0;
  for (int m = 1; m <= s.M; ++m)
    for (int n = 1; n <= s.N; ++n) {
      const cplx t1 = -(m * pi / a) * field.e1[s.flat1(m, n)];
      const cplx t2 = -(n * pi / b) * field.e2[s.flat2(m, n)];
      const cplx t3 = dE3_dx3[s.flat3(m, n)];
      const double scale =
          std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
      worst = std::max(worst, std::abs(t1 + t2 + t3) / scale);
    }
  return worst;
}

} // namespace cavrcs
