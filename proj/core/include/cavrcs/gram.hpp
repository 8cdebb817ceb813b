#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cavrcs {

// Double-aperture products of the half-space kernel with the three trig mode
// families, both sides indexed over the full rectangle (m,n),(k1,k2) in
// {0..M} x {0..N} (row-major, inner index n resp. k2):
//   i1: cos*sin outer, cos*sin inner   (rows/cols meaningful on set1)
//   i2: sin*cos outer, sin*cos inner   (set2)
//   i3: cos*cos outer, cos*cos inner   (all of the rectangle)
// Each tensor is symmetric under (m,n) <-> (k1,k2); i1 vanishes for n = 0 or
// k2 = 0, i2 for m = 0 or k1 = 0.
struct GramTensor {
  int M = 0, N = 0;
  std::vector<std::complex<double>> i1, i2, i3;

  int side() const { return (M + 1) * (N + 1); }
  int row(int m, int n) const { return m * (N + 1) + n; }
  std::complex<double> at1(int m, int n, int k1, int k2) const {
    return i1[static_cast<size_t>(row(m, n)) * side() + row(k1, k2)];
  }
  std::complex<double> at2(int m, int n, int k1, int k2) const {
    return i2[static_cast<size_t>(row(m, n)) * side() + row(k1, k2)];
  }
  std::complex<double> at3(int m, int n, int k1, int k2) const {
    return i3[static_cast<size_t>(row(m, n)) * side() + row(k1, k2)];
  }
};

// Closed-form transform of one aperture mode against integer frequencies:
// product over both axes of int_0^L e^{-2 pi i j y} e^{i k pi y / L} dy.
std::complex<double> rect_mode_transform(int j1, int j2, int k1, int k2, double a, double b);
// One-axis factor at real frequency xi: int_0^len e^{-2 pi i xi y + i k pi y/len} dy.
std::complex<double> rect_factor(double xi, int k, double len);

struct GramParams {
  int quad_grid = 0; // frequency points per axis = quad_grid + 1
  double regime_threshold = 10.0;
  int threads = 1;
};

// Signed-index kernel products E[(m,n)][(k)] for m in -M..M, n in -N..N and
// likewise k, with e^{i m pi x1/a} e^{i n pi x2/b} factors on both sides.
// Row-major, row (m+M)*(2N+1)+(n+N); intended for small (M,N) validation.
std::vector<std::complex<double>> exp_gram(int M, int N, double kappa0, double a, double b,
                                           const GramParams& params);

// Production FFT-convolution path: the three trig tensors assembled from
// +-1/16-weighted signed-index combinations without materializing them.
GramTensor trig_gram(int M, int N, double kappa0, double a, double b, const GramParams& params);

// Slow reference evaluation by polar-desingularized quadrature (the inner
// kernel integral is regular in polar coordinates about the outer point).
// level >= 0 raises the quadrature resolution; intended for M, N <= 4.
GramTensor oracle_gram_level(int M, int N, double kappa0, double a, double b, int level = 0);

// Reference evaluation refined until successive levels agree to tol in
// max-entry relative terms. Throws if levels 0..2 do not reach tol.
GramTensor oracle_gram(int M, int N, double kappa0, double a, double b, double tol);

// Reference evaluation of the pre-reduction coupling integrals
//   axis==1:  int sin*cos_(m,n)(x) d/dx1 [ S cos*cos_(k1,k2) ](x) dx
//   axis==2:  int cos*sin_(m,n)(x) d/dx2 [ S cos*cos_(k1,k2) ](x) dx
// where S is the aperture kernel integral. The kernel gradient is a principal
// value; it is evaluated in polar coordinates with the constant mode part
// integrated in closed angular form (the log(rho) pieces cancel over the full
// angle). Layout matches GramTensor: side() x side(), row (m)(N+1)+n.
std::vector<std::complex<double>> oracle_gradient_form(int M, int N, double kappa0, double a,
                                                       double b, int axis, int level = 0);

// Binary cache of GramTensor keyed by (M, N, kappa0, a, b, quad_grid).
// Files are little-endian; writes go through a temp file + atomic rename.
std::string gram_cache_filename(int M, int N, double kappa0, double a, double b, int quad_grid);
bool gram_cache_load(const std::string& dir, int M, int N, double kappa0, double a, double b,
                     int quad_grid, GramTensor& out);
void gram_cache_store(const std::string& dir, const GramTensor& g, double kappa0, double a,
                      double b, int quad_grid);

} // namespace cavrcs
