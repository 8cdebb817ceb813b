#pragma once

#include "cavrcs/config.hpp"
#include "cavrcs/gram.hpp"
#include "cavrcs/modes.hpp"

#include <Eigen/Dense>

namespace cavrcs {

// Coupling blocks of the aperture radiation condition, scaled by the vertical
// step h and the per-mode normalizers of the trig basis. Row/column index
// ranges follow the three component sets:
//   rows of F1, H1, G1, I1, g1: set1;  rows of F2, G2, H2, I2, g2: set2;
//   rows of F3, G3: set3.
//   cols: F1, H1 over set1; G1 over set2; F2, G2 over set2; H2 over set1;
//         I1, I2 over set3; F3 over set1; G3 over set2.
// The I1, I2, F3, G3 blocks are the sparse height-difference couplings; they
// are stored dense for uniform assembly.
struct TbcBlocks {
  Eigen::MatrixXcd F1, G1, H1;
  Eigen::MatrixXcd F2, G2, H2;
  Eigen::MatrixXcd I1, I2, F3, G3;
};

TbcBlocks build_tbc_blocks(const ModeIndexSets& sets, const GramTensor& gram, double kappa0,
                           double a, double b, double h);

// Right-hand side produced by a plane wave hitting the aperture: projections
// of the tangential incident field onto the first two mode families, with the
// same h / normalizer scaling as the matrix blocks. Closed forms; the
// resonant directions (vanishing phase detuning) are continuous limits.
struct IncidentRhs {
  Eigen::VectorXcd g1, g2;
};

IncidentRhs build_incident_rhs(const ModeIndexSets& sets, const IncidentWave& wave, double a,
                               double b, double h);

// One-axis projections int_0^len {cos,sin}(k pi y/len) e^{i alpha y} dy.
std::complex<double> cos_exp_integral(int k, double alpha, double len);
std::complex<double> sin_exp_integral(int k, double alpha, double len);

} // namespace cavrcs
