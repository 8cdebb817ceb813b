#include "cavrcs/kernel_table.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <complex>
#include <numbers>

using namespace cavrcs;
using testutil::rel_err;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

// (1/4pi) int_0^R J0(c r) e^{i kappa0 r} dr by composite oscillation-sized
// Gauss panels; same construction as the oscillatory-module oracle.
cplx oracle_entry(double R, double c, double kappa0) {
  using boost::math::quadrature::gauss;
  const int panels = std::max(4, static_cast<int>(std::ceil((c + kappa0) * R / pi)));
  cplx acc{};
  for (int k = 0; k < panels; ++k) {
    const double r0 = R * k / panels, r1 = R * (k + 1) / panels;
    acc += gauss<double, 20>::integrate(
        [&](double r) {
          return cplx{std::cos(kappa0 * r), std::sin(kappa0 * r)} *
                 boost::math::cyl_bessel_j(0, c * r);
        },
        r0, r1);
  }
  return acc / (4 * pi);
}

} // namespace

TEST_CASE("kernel_transform_table: closed forms, symmetry, oracle anchors") {
  const double kappa0 = 2 * pi, a = 1.0;
  KernelTransformTable t = kernel_transform_table(kappa0, a, 96, 10.0);
  const double R = std::sqrt(2.0) * a;

  // Zero frequency has an elementary antiderivative.
  const cplx phase{std::cos(kappa0 * R), std::sin(kappa0 * R)};
  const cplx dc = (phase - 1.0) / (cplx{0, 1} * kappa0) / (4 * pi);
  CHECK(rel_err(t.at(0, 0), dc) <= 1e-12);
  CHECK(rel_err(t.at(0, 0), {0.00650087349372898085, 0.0235345829244143373}) <= 1e-12);

  // Entries depend on the frequency only through its radius.
  CHECK(rel_err(t.at(3, 4), t.at(5, 0)) <= 1e-12);
  CHECK(rel_err(t.at(-3, 4), t.at(3, -4)) <= 1e-12);
  CHECK(rel_err(t.at(12, 5), t.at(13, 0)) <= 1e-12);

  // Independent references: frozen oscillatory values at radius 5 and 40,
  // plus a live quadrature at radius 50 (regime 2 territory).
  const cplx mult5{0.033286910893265111, -0.00134122847759574836};
  const cplx mult40{0.00393167645173520172, 0.0000335692991526723075};
  CHECK(rel_err(t.at(3, 4), mult5 / (4 * pi)) <= 1e-6);
  CHECK(rel_err(t.at(40, 0), mult40 / (4 * pi)) <= 1e-6);
  CHECK(rel_err(t.at(30, 40), oracle_entry(R, 2 * pi * 50.0, kappa0)) <= 1e-6);
}

TEST_CASE("build_kernel_table: fractional spacing and thread determinism") {
  const double kappa0 = 2 * pi;
  const double radius = std::sqrt(2.0);
  KernelTransformTable one = build_kernel_table(kappa0, radius, 6, 6, 0.7, 0.7, 10.0, 1);
  KernelTransformTable four = build_kernel_table(kappa0, radius, 6, 6, 0.7, 0.7, 10.0, 4);
  REQUIRE(one.values.size() == four.values.size());
  for (size_t i = 0; i < one.values.size(); ++i) CHECK(one.values[i] == four.values[i]);

  // hypot(3, 4)*0.7 == hypot(5, 0)*0.7: the radial dedup has to see it.
  CHECK(rel_err(one.at(3, 4), one.at(5, 0)) <= 1e-12);
  CHECK(rel_err(one.at(3, 4), oracle_entry(radius, 2 * pi * 3.5, kappa0)) <= 1e-6);
}
