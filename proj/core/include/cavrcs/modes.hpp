#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace cavrcs {

using cplx = std::complex<double>;

// Flattened index sets of the three field components:
//   set1 (E1, cos*sin): m in 0..M, n in 1..N
//   set2 (E2, sin*cos): m in 1..M, n in 0..N
//   set3 (E3, sin*sin): m in 1..M, n in 1..N
// Flattening is outer-m, inner-n throughout.
struct ModeIndexSets {
  int M = 0, N = 0;

  int size1() const { return (M + 1) * N; }
  int size2() const { return M * (N + 1); }
  int size3() const { return M * N; }
  int total() const { return 3 * M * N + M + N; }

  int flat1(int m, int n) const { return m * N + (n - 1); }
  int flat2(int m, int n) const { return (m - 1) * (N + 1) + n; }
  int flat3(int m, int n) const { return (m - 1) * N + (n - 1); }

  std::pair<int, int> unflat1(int i) const { return {i / N, i % N + 1}; }
  std::pair<int, int> unflat2(int i) const { return {i / (N + 1) + 1, i % (N + 1)}; }
  std::pair<int, int> unflat3(int i) const { return {i / N + 1, i % N + 1}; }
};

// Modal coefficients of the three components at one horizontal level.
struct ApertureField {
  ModeIndexSets sets;
  std::vector<cplx> e1, e2, e3; // sizes size1/size2/size3

  static ApertureField zero(const ModeIndexSets& sets);
};

// Modal coefficients on all vertical levels 0..levels-1 of one layer,
// stored level-major: e1[level*size1 + flat1(m,n)].
struct VolumeField {
  ModeIndexSets sets;
  int levels = 0;
  std::vector<cplx> e1, e2, e3;

  static VolumeField zero(const ModeIndexSets& sets, int levels);
  cplx& at1(int level, int flat) { return e1[static_cast<size_t>(level) * sets.size1() + flat]; }
  cplx& at2(int level, int flat) { return e2[static_cast<size_t>(level) * sets.size2() + flat]; }
  cplx& at3(int level, int flat) { return e3[static_cast<size_t>(level) * sets.size3() + flat]; }
  cplx at1(int level, int flat) const { return e1[static_cast<size_t>(level) * sets.size1() + flat]; }
  cplx at2(int level, int flat) const { return e2[static_cast<size_t>(level) * sets.size2() + flat]; }
  cplx at3(int level, int flat) const { return e3[static_cast<size_t>(level) * sets.size3() + flat]; }
};

// Pointwise synthesis of the modal sums on the uniform (P1+1) x (P2+1) aperture
// grid x1 = i*a/P1, x2 = j*b/P2; out[c][i*(P2+1)+j] for components c = 0,1,2.
struct ApertureGridField {
  int P1 = 0, P2 = 0;
  std::vector<cplx> e1, e2, e3;
};
ApertureGridField synthesize_aperture(const ApertureField& f, double a, double b, int P1, int P2);

// Max over set3 of |(-m pi/a) E1 + (-n pi/b) E2 + dE3_dx3|, relative to the
// largest of the three term magnitudes per mode. dE3_dx3 carries the modal
// vertical-derivative coefficients (e.g. a one-sided difference at a level).
double discrete_divergence_residual(const ApertureField& field, const std::vector<cplx>& dE3_dx3,
                                    double a, double b);

} // namespace cavrcs
