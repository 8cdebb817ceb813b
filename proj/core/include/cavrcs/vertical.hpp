#pragma once

#include "cavrcs/config.hpp"
#include "cavrcs/modes.hpp"

#include <complex>
#include <vector>

namespace cavrcs {

// Elimination patterns for the per-mode vertical chain: unit off-diagonals,
// diagonal -2 + d, with the first diagonal set by the bottom closure:
//   Dirichlet    -2 + d       (field pinned to zero below the first level)
//   Neumann      -1 + d       (zero vertical derivative at the bottom)
//   LayeredTop1  1/beta - 2 + d   (upper-region chain; beta carries the
//   LayeredTop3  1/beta - 2 + d    eliminated lower region + material jump)
enum class TridiagPattern { Dirichlet, Neumann, LayeredTop1, LayeredTop3 };

// Last LU pivot of the J-row chain. Pivot recurrence p_{j+1} = (-2+d) - 1/p_j.
// pivots, when non-null, receives the full sequence p_1..p_J.
// Throws on an exactly zero pivot (resonant vertical wavenumber).
std::complex<double> tridiag_lu_lastpivot(int J, std::complex<double> d, TridiagPattern pattern,
                                          std::complex<double> beta = {},
                                          std::vector<std::complex<double>>* pivots = nullptr);

// Interior profile x_1..x_J of a chain driven only by the coupling to a known
// value above the last level: x_J = -top/p_J, then x_j = -x_{j+1}/p_j.
std::vector<std::complex<double>> recover_chain(const std::vector<std::complex<double>>& pivots,
                                                std::complex<double> top);

// Per-mode aperture closure of the vertical problem. The eliminations leave
//   E_{l,last} = -(1/r) E_{l,aperture}                       (l = 1, 2, 3)
// and, in the two-material case, an extra rank-one coupling
//   E_{l,last} = -(1/r) E_{l,aperture} + (s_l/r) E_{3,aperture}   (l = 1, 2).
// r12/r3 hold r over the full (m,n) rectangle (components 1,2 share one
// chain); s1/s2 hold s_l (zero in the single-material case). The forward
// pivots are retained so interior recovery is pure back-substitution.
struct DtnTable {
  int M = 0, N = 0;
  int J = 0;     // bottom-layer interior levels (all levels when homogeneous)
  int I_top = 0; // top-layer interior levels (layered only)
  bool layered = false;
  std::complex<double> eps_ratio{1.0, 0.0}; // eps_top / eps_bottom

  std::vector<std::complex<double>> r12, r3, s1, s2;    // rectangle-indexed
  std::vector<std::complex<double>> piv12, piv3;        // aperture-side chains
  std::vector<std::complex<double>> piv12_low, piv3_low; // layered bottom chains
  std::vector<std::complex<double>> beta1, beta3, dbase; // layered closure data

  int idx(int m, int n) const { return m * (N + 1) + n; }
  std::complex<double> r12_at(int m, int n) const { return r12[idx(m, n)]; }
  std::complex<double> r3_at(int m, int n) const { return r3[idx(m, n)]; }
  // Chain length of the aperture-side elimination (J or I_top).
  int top_len() const { return layered ? I_top : J; }
};

DtnTable build_dtn_table(const CavityConfig& cfg);

// Back-substitute the vertical eliminations below a solved aperture field.
// Levels are global bottom-up: 0 = cavity floor, last = aperture. The
// homogeneous case has J+2 levels; the layered case J+I_top+3 with the
// material-interface level at index J+1 holding the top-layer-side values
// (the bottom-side third component is eps_ratio times the stored value).
// Level 0 holds the boundary rows: components 1,2 zero, component 3 equal to
// level 1 (discrete Neumann).
VolumeField recover_interior(const ApertureField& aperture, const DtnTable& dtn,
                             const CavityConfig& cfg);

// Vertical step parameter d = h^2 (kappa0^2 eps - (m pi/a)^2 - (n pi/b)^2).
std::complex<double> vertical_step_d(int m, int n, double a, double b, double h, double kappa0,
                                     std::complex<double> eps);

} // namespace cavrcs
