#pragma once

#include "cavrcs/modes.hpp"
#include "cavrcs/tbc.hpp"
#include "cavrcs/vertical.hpp"

#include <Eigen/Dense>

namespace cavrcs {

// Dense linear system for the aperture-level field after the vertical
// eliminations have been folded into per-mode closure diagonals. Factored
// once; solved per incident direction.
struct InterfaceSystem {
  ModeIndexSets sets;
  Eigen::MatrixXcd A;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
  double norm = 0.0;  // infinity norm of A, reference scale for the pivot check
  double rcond = 0.0; // reciprocal condition estimate from the factorization
};

InterfaceSystem assemble_interface_system(const ModeIndexSets& sets, const TbcBlocks& tbc,
                                          const DtnTable& dtn);

// Solve for one incident right-hand side; throws if the factorization shows a
// pivot below 1e-14 * ||A|| (numerically singular interface operator).
ApertureField solve_aperture(const InterfaceSystem& sys, const IncidentRhs& rhs);

} // namespace cavrcs
