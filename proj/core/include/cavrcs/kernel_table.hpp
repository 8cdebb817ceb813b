#pragma once

#include <complex>
#include <vector>

namespace cavrcs {

// Radial Fourier data of the truncated half-space kernel
// e^{i kappa0 r}/(4 pi r) 1_{r <= radius}: values on the frequency grid
// j1 in -Q1..Q1, j2 in -Q2..Q2 with per-axis frequency steps s1, s2,
//   value(j1, j2) = (1/4pi) * int_0^radius J0(2 pi rho r) e^{i kappa0 r} dr,
//   rho = sqrt((j1 s1)^2 + (j2 s2)^2).
// The 1/(4 pi) normalization matches the kernel's own prefactor; consumers
// converting to the e^{-2 pi i xi.z} transform multiply by 2 pi.
struct KernelTransformTable {
  int Q1 = 0, Q2 = 0;
  double freq_step1 = 1.0, freq_step2 = 1.0;
  double kappa0 = 0.0, radius = 0.0;
  std::vector<std::complex<double>> values; // row-major (j1+Q1)*(2*Q2+1) + (j2+Q2)

  std::complex<double> at(int j1, int j2) const {
    return values[static_cast<size_t>(j1 + Q1) * (2 * Q2 + 1) + (j2 + Q2)];
  }
};

// Integer-frequency table over j in {-grid/2..grid/2}^2 with radius sqrt(2)*a.
KernelTransformTable kernel_transform_table(double kappa0, double a, int grid,
                                            double regime_threshold = 10.0);

// General builder used by the Gram assembly (per-axis steps, explicit radius).
KernelTransformTable build_kernel_table(double kappa0, double radius, int Q1, int Q2, double s1,
                                        double s2, double regime_threshold, int threads = 1);

} // namespace cavrcs
