#include "cavrcs/interface_system.hpp"

#include <stdexcept>

namespace cavrcs {

InterfaceSystem assemble_interface_system(const ModeIndexSets& sets, const TbcBlocks& tbc,
                                          const DtnTable& dtn) {
  using cplx = std::complex<double>;
  const int s1 = sets.size1(), s2 = sets.size2(), s3 = sets.size3();
  InterfaceSystem sys;
  sys.sets = sets;
  Eigen::MatrixXcd& A = sys.A;
  A.setZero(s1 + s2 + s3, s1 + s2 + s3);

  A.block(0, 0, s1, s1) = -tbc.F1 - tbc.H1;
  A.block(0, s1, s1, s2) = -tbc.G1;
  A.block(0, s1 + s2, s1, s3) = tbc.I1;
  A.block(s1, 0, s2, s1) = -tbc.H2;
  A.block(s1, s1, s2, s2) = -tbc.F2 - tbc.G2;
  A.block(s1, s1 + s2, s2, s3) = tbc.I2;
  A.block(s1 + s2, 0, s3, s1) = tbc.F3;
  A.block(s1 + s2, s1, s3, s2) = tbc.G3;

  // Vertical closures: E_{l,J} = -(1/r) E_{l,J+1} (+ (s_l/r) E_{3,J+1} in the
  // two-material case) eliminate the level below the aperture, turning the
  // height-difference identity into the closure diagonal -1 - 1/r.
  for (int m = 0; m <= sets.M; ++m)
    for (int n = 1; n <= sets.N; ++n) {
      const int r = sets.flat1(m, n);
      const cplx rr = dtn.r12_at(m, n);
      A(r, r) += -1.0 - 1.0 / rr;
      if (m >= 1) A(r, s1 + s2 + sets.flat3(m, n)) += dtn.s1[dtn.idx(m, n)] / rr;
    }
  for (int m = 1; m <= sets.M; ++m)
    for (int n = 0; n <= sets.N; ++n) {
      const int r = s1 + sets.flat2(m, n);
      const cplx rr = dtn.r12_at(m, n);
      A(r, r) += -1.0 - 1.0 / rr;
      if (n >= 1) A(r, s1 + s2 + sets.flat3(m, n)) += dtn.s2[dtn.idx(m, n)] / rr;
    }
  for (int m = 1; m <= sets.M; ++m)
    for (int n = 1; n <= sets.N; ++n) {
      const int r = s1 + s2 + sets.flat3(m, n);
      A(r, r) += -1.0 - 1.0 / dtn.r3_at(m, n);
    }

  sys.norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  sys.lu.compute(A);
  sys.rcond = sys.lu.rcond();
  return sys;
}

ApertureField solve_aperture(const InterfaceSystem& sys, const IncidentRhs& rhs) {
  const int s1 = sys.sets.size1(), s2 = sys.sets.size2(), s3 = sys.sets.size3();
  const double min_pivot = sys.lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-14 * sys.norm))
    throw std::runtime_error(
        "interface system is numerically singular (cavity resonance at this frequency); "
        "perturb the frequency or geometry");
  Eigen::VectorXcd b(s1 + s2 + s3);
  b.segment(0, s1) = rhs.g1;
  b.segment(s1, s2) = rhs.g2;
  b.segment(s1 + s2, s3).setZero();
  const Eigen::VectorXcd x = sys.lu.solve(b);
  ApertureField f = ApertureField::zero(sys.sets);
  for (int i = 0; i < s1; ++i) f.e1[i] = x(i);
  for (int i = 0; i < s2; ++i) f.e2[i] = x(s1 + i);
  for (int i = 0; i < s3; ++i) f.e3[i] = x(s1 + s2 + i);
  return f;
}

} // namespace cavrcs
