#pragma once

#include <array>

namespace cavrcs::detail {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
struct GL16 {
  std::array<double, 16> x, w;
  GL16() {
    constexpr double xs[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                              0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                              0.9445750230732326, 0.9894009349916499};
    constexpr double ws[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                              0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                              0.0622535239386479, 0.0271524594117541};
    for (int i = 0; i < 8; ++i) {
      x[2 * i] = -xs[i];
      x[2 * i + 1] = xs[i];
      w[2 * i] = ws[i];
      w[2 * i + 1] = ws[i];
    }
  }
};
inline const GL16 gl16;

} // namespace cavrcs::detail
