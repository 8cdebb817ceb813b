#include "cavrcs/interface_system.hpp"

#include "cavrcs/config.hpp"
#include "cavrcs/gram.hpp"
#include "cavrcs/tbc.hpp"
#include "cavrcs/vertical.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace cavrcs;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

struct SmallSystem {
  CavityConfig cfg;
  ModeIndexSets sets;
  GramTensor gram;
  TbcBlocks tbc;
  DtnTable dtn;
  InterfaceSystem sys;
};

SmallSystem make_small() {
  SmallSystem s;
  s.cfg.a = 1.0;
  s.cfg.b = 1.3;
  s.cfg.c1 = 0.7;
  s.cfg.kappa0 = 5.0;
  s.cfg.M = s.cfg.N = 1;
  s.cfg.J = 60;
  s.cfg.quad_grid = 64;
  s.sets = ModeIndexSets{1, 1};
  GramParams p;
  p.quad_grid = s.cfg.quad_grid;
  s.gram = trig_gram(1, 1, s.cfg.kappa0, s.cfg.a, s.cfg.b, p);
  s.tbc = build_tbc_blocks(s.sets, s.gram, s.cfg.kappa0, s.cfg.a, s.cfg.b, s.cfg.h());
  s.dtn = build_dtn_table(s.cfg);
  s.sys = assemble_interface_system(s.sets, s.tbc, s.dtn);
  return s;
}

} // namespace

TEST_CASE("assemble_interface_system: order-5 system laid out entry by entry") {
  SmallSystem s = make_small();
  REQUIRE(s.sys.A.rows() == 5);
  // Unknown order: E1(0,1), E1(1,1), E2(1,0), E2(1,1), E3(1,1).
  const double h = s.cfg.h();
  const cplx r01 = s.dtn.r12_at(0, 1), r11 = s.dtn.r12_at(1, 1);
  const cplx r10 = s.dtn.r12_at(1, 0), r3 = s.dtn.r3_at(1, 1);

  Eigen::MatrixXcd E(5, 5);
  E.setZero();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      E(r, c) = -s.tbc.F1(r, c) - s.tbc.H1(r, c);
      E(r, 2 + c) = -s.tbc.G1(r, c);
      E(2 + r, c) = -s.tbc.H2(r, c);
      E(2 + r, 2 + c) = -s.tbc.F2(r, c) - s.tbc.G2(r, c);
    }
  E(0, 0) += -1.0 - 1.0 / r01;
  E(1, 1) += -1.0 - 1.0 / r11;
  E(2, 2) += -1.0 - 1.0 / r10;
  E(3, 3) += -1.0 - 1.0 / r11;
  E(4, 4) = -1.0 - 1.0 / r3;
  // Height-step diagonals at the matching (1,1) mode only.
  E(1, 4) = pi * h / s.cfg.a;
  E(3, 4) = pi * h / s.cfg.b;
  E(4, 1) = pi * h / s.cfg.a;
  E(4, 3) = pi * h / s.cfg.b;

  const double scale = E.cwiseAbs().maxCoeff();
  CHECK((s.sys.A - E).cwiseAbs().maxCoeff() <= 1e-13 * scale);
  // The remaining structural zeros really are zero.
  CHECK(s.sys.A(0, 4) == cplx{});
  CHECK(s.sys.A(2, 4) == cplx{});
  CHECK(s.sys.A(4, 0) == cplx{});
  CHECK(s.sys.A(4, 2) == cplx{});
}

TEST_CASE("assemble_interface_system: layered coupling feeds the third column") {
  CavityConfig cfg;
  cfg.a = cfg.b = 1.0;
  cfg.layered = true;
  cfg.c1 = 0.5;
  cfg.c2 = 1.0;
  cfg.J = 3;
  cfg.I_top = 1;
  cfg.eps1 = {2.0, 0.3};
  cfg.eps2 = {4.0, 1.0};
  cfg.kappa0 = 2 * pi;
  cfg.M = cfg.N = 2;
  ModeIndexSets sets{2, 2};
  GramParams p;
  p.quad_grid = 64;
  GramTensor gram = trig_gram(2, 2, cfg.kappa0, cfg.a, cfg.b, p);
  TbcBlocks tbc = build_tbc_blocks(sets, gram, cfg.kappa0, cfg.a, cfg.b, cfg.h());
  DtnTable dtn = build_dtn_table(cfg);
  InterfaceSystem sys = assemble_interface_system(sets, tbc, dtn);

  const int s1 = sets.size1(), s2 = sets.size2();
  double coupling_mag = 0.0;
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 2; ++n) {
      const cplx want1 = tbc.I1(sets.flat1(m, n), sets.flat3(m, n)) +
                         dtn.s1[dtn.idx(m, n)] / dtn.r12_at(m, n);
      const cplx got1 = sys.A(sets.flat1(m, n), s1 + s2 + sets.flat3(m, n));
      CHECK(std::abs(got1 - want1) <= 1e-15 * std::abs(want1));
      const cplx want2 = tbc.I2(sets.flat2(m, n), sets.flat3(m, n)) +
                         dtn.s2[dtn.idx(m, n)] / dtn.r12_at(m, n);
      const cplx got2 = sys.A(s1 + sets.flat2(m, n), s1 + s2 + sets.flat3(m, n));
      CHECK(std::abs(got2 - want2) <= 1e-15 * std::abs(want2));
      coupling_mag = std::max(coupling_mag, std::abs(dtn.s1[dtn.idx(m, n)] / dtn.r12_at(m, n)));
    }
  // The material contrast must actually move the matrix.
  CHECK(coupling_mag > 1e-6);
  // Rows with no third-component partner carry no coupling.
  CHECK(sys.A(sets.flat1(0, 1), s1 + s2 + sets.flat3(1, 1)) ==
        tbc.I1(sets.flat1(0, 1), sets.flat3(1, 1)));
}

TEST_CASE("solve_aperture: residual, linearity and repeatability") {
  SmallSystem s = make_small();
  REQUIRE(s.sys.rcond > 1e-8);

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_rhs = [&] {
    IncidentRhs r;
    r.g1 = Eigen::VectorXcd(2);
    r.g2 = Eigen::VectorXcd(2);
    for (int i = 0; i < 2; ++i) {
      r.g1(i) = cplx{u(rng), u(rng)};
      r.g2(i) = cplx{u(rng), u(rng)};
    }
    return r;
  };

  IncidentRhs zero;
  zero.g1 = Eigen::VectorXcd::Zero(2);
  zero.g2 = Eigen::VectorXcd::Zero(2);
  ApertureField fz = solve_aperture(s.sys, zero);
  for (const cplx& v : fz.e1) CHECK(v == cplx{});
  for (const cplx& v : fz.e2) CHECK(v == cplx{});
  for (const cplx& v : fz.e3) CHECK(v == cplx{});

  IncidentRhs ra = random_rhs(), rb = random_rhs();
  ApertureField xa = solve_aperture(s.sys, ra);

  Eigen::VectorXcd xv(5), bv(5);
  xv << xa.e1[0], xa.e1[1], xa.e2[0], xa.e2[1], xa.e3[0];
  bv << ra.g1(0), ra.g1(1), ra.g2(0), ra.g2(1), cplx{};
  CHECK((s.sys.A * xv - bv).norm() <= 1e-10 * bv.norm());

  // Linearity through the shared factorization.
  ApertureField xb = solve_aperture(s.sys, rb);
  IncidentRhs rsum;
  rsum.g1 = ra.g1 + rb.g1;
  rsum.g2 = ra.g2 + rb.g2;
  ApertureField xs = solve_aperture(s.sys, rsum);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(xs.e1[i] - (xa.e1[i] + xb.e1[i])) <= 1e-12 * std::abs(xs.e1[i]));
    CHECK(std::abs(xs.e2[i] - (xa.e2[i] + xb.e2[i])) <= 1e-12 * std::abs(xs.e2[i]));
  }
  CHECK(std::abs(xs.e3[0] - (xa.e3[0] + xb.e3[0])) <= 1e-12 * std::abs(xs.e3[0]));

  // Same factorization, same rhs: bitwise identical.
  ApertureField xa2 = solve_aperture(s.sys, ra);
  CHECK(xa2.e1 == xa.e1);
  CHECK(xa2.e2 == xa.e2);
  CHECK(xa2.e3 == xa.e3);
}

TEST_CASE("solve_aperture: a singular interface operator is refused") {
  ModeIndexSets sets{1, 1};
  TbcBlocks tbc;
  tbc.F1 = tbc.H1 = Eigen::MatrixXcd::Zero(2, 2);
  tbc.F2 = tbc.G2 = Eigen::MatrixXcd::Zero(2, 2);
  tbc.G1 = tbc.H2 = Eigen::MatrixXcd::Zero(2, 2);
  tbc.I1 = Eigen::MatrixXcd::Zero(2, 1);
  tbc.I2 = Eigen::MatrixXcd::Zero(2, 1);
  tbc.F3 = Eigen::MatrixXcd::Zero(1, 2);
  tbc.G3 = Eigen::MatrixXcd::Zero(1, 2);
  DtnTable dtn;
  dtn.M = dtn.N = 1;
  dtn.J = 1;
  dtn.r12.assign(4, cplx{-1.0, 0.0}); // closure diagonal -1 - 1/r vanishes
  dtn.r3.assign(4, cplx{-1.0, 0.0});
  dtn.s1.assign(4, cplx{});
  dtn.s2.assign(4, cplx{});
  InterfaceSystem sys = assemble_interface_system(sets, tbc, dtn);
  IncidentRhs rhs;
  rhs.g1 = Eigen::VectorXcd::Ones(2);
  rhs.g2 = Eigen::VectorXcd::Ones(2);
  try {
    solve_aperture(sys, rhs);
    FAIL("expected a singularity error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("singular") != std::string::npos);
  }
}
