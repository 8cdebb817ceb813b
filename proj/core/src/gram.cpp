#include "cavrcs/gram.hpp"

#include "cavrcs/kernel_table.hpp"
#include "cavrcs/threading.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace cavrcs {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

std::mutex fftw_planner_mu; // FFTW's planner is not thread-safe

inline double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// Convolution-grid geometry shared by exp_gram and trig_gram.
//
// The kernel product I_k(x) = int_Gamma mode_k(y) g(|x-y|) dy is evaluated as
// one period cell of a 2-D Fourier series: per axis the cell length L must
// exceed (aperture extent + kernel cutoff) so no periodized kernel image
// reaches the aperture, and the aperture is made an exact Pa-interval subgrid
// of the P-point cell (L = extent * P / Pa), so the outer aperture integral
// can reuse the same samples.
struct ConvGrid {
  int P = 0;        // frequency/space points per axis (odd, = quad_grid+1)
  int Q = 0;        // frequencies -Q..Q
  int Pa = 0, Pb = 0; // aperture intervals per axis
  int PA2 = 0, PB2 = 0; // outer transform sizes 2*Pa, 2*Pb
  double L1 = 0, L2 = 0, d1 = 0, d2 = 0, radius = 0;
};

ConvGrid make_grid(int M, int N, double a, double b, int quad_grid) {
  if (quad_grid < 8 || quad_grid % 2 != 0)
    throw std::invalid_argument("gram: quad_grid must be an even integer >= 8");
  ConvGrid g;
  g.Q = quad_grid / 2;
  g.P = quad_grid + 1;
  g.radius = std::sqrt(2.0) * std::max(a, b);
  const double margin = 1.02;
  const double l1min = margin * (a + g.radius), l2min = margin * (b + g.radius);
  g.Pa = static_cast<int>(std::floor(g.P * a / l1min));
  g.Pb = static_cast<int>(std::floor(g.P * b / l2min));
  if (g.Pa < std::max(4, M + 2) || g.Pb < std::max(4, N + 2))
    throw std::invalid_argument("gram: quad_grid too small for the requested modes");
  g.L1 = a * g.P / g.Pa;
  g.L2 = b * g.P / g.Pb;
  g.d1 = a / g.Pa;
  g.d2 = b / g.Pb;
  g.PA2 = 2 * g.Pa;
  g.PB2 = 2 * g.Pb;
  return g;
}

// Trapezoid with Gregory second-order end corrections; exact enough that the
// frequency truncation, not the aperture rule, dominates the error.
inline double gregory_weight(int p, int last) {
  if (p == 0 || p == last) return 5.0 / 12.0;
  if (p == 1 || p == last - 1) return 13.0 / 12.0;
  return 1.0;
}

struct ConvWorkspace {
  fftw_complex *win = nullptr, *sout = nullptr, *pin = nullptr, *pout = nullptr;
  explicit ConvWorkspace(const ConvGrid& g) {
    win = fftw_alloc_complex(static_cast<size_t>(g.P) * g.P);
    sout = fftw_alloc_complex(static_cast<size_t>(g.P) * g.P);
    pin = fftw_alloc_complex(static_cast<size_t>(g.PA2) * g.PB2);
    pout = fftw_alloc_complex(static_cast<size_t>(g.PA2) * g.PB2);
    if (!win || !sout || !pin || !pout) throw std::bad_alloc();
  }
  ~ConvWorkspace() {
    fftw_free(win);
    fftw_free(sout);
    fftw_free(pin);
    fftw_free(pout);
  }
  ConvWorkspace(const ConvWorkspace&) = delete;
  ConvWorkspace& operator=(const ConvWorkspace&) = delete;
};

struct ConvEngine {
  ConvGrid g;
  int M, N;
  double a, b;
  KernelTransformTable table;
  fftw_plan plan_inner = nullptr, plan_outer = nullptr;

  ConvEngine(int M_, int N_, double kappa0, double a_, double b_, const GramParams& p)
      : g(make_grid(M_, N_, a_, b_, p.quad_grid)), M(M_), N(N_), a(a_), b(b_) {
    table = build_kernel_table(kappa0, g.radius, g.Q, g.Q, 1.0 / g.L1, 1.0 / g.L2,
                               p.regime_threshold, p.threads);
    ConvWorkspace proto(g);
    std::lock_guard<std::mutex> lk(fftw_planner_mu);
    plan_inner = fftw_plan_dft_2d(g.P, g.P, proto.win, proto.sout, FFTW_BACKWARD, FFTW_ESTIMATE);
    plan_outer =
        fftw_plan_dft_2d(g.PA2, g.PB2, proto.pin, proto.pout, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_inner || !plan_outer) throw std::runtime_error("gram: fftw plan creation failed");
  }
  ~ConvEngine() {
    std::lock_guard<std::mutex> lk(fftw_planner_mu);
    fftw_destroy_plan(plan_inner);
    fftw_destroy_plan(plan_outer);
  }
  ConvEngine(const ConvEngine&) = delete;
  ConvEngine& operator=(const ConvEngine&) = delete;

  // Outer-transform bins T[(ms,ns)] = int_Gamma e^{i ms pi x1/a + i ns pi x2/b}
  // I_{(k1s,k2s)}(x) dx for all signed (ms, ns), one signed source mode (k1s, k2s).
  void signed_column(ConvWorkspace& ws, int k1s, int k2s, std::vector<cplx>& out) const {
    const int P = g.P;
    // Frequency-domain product of the two transforms. The table stores the
    // kernel's own 1/(4 pi) normalization; the e^{-2 pi i xi.z} transform of
    // the truncated kernel is 2 pi times that.
    std::vector<cplx> rf1(P), rf2(P);
    for (int j = -g.Q; j <= g.Q; ++j) {
      rf1[(j + P) % P] = rect_factor(j / g.L1, k1s, a);
      rf2[(j + P) % P] = rect_factor(j / g.L2, k2s, b);
    }
    const double scale = 2.0 * pi / (g.L1 * g.L2);
    auto* win = reinterpret_cast<cplx*>(ws.win);
    for (int j1 = -g.Q; j1 <= g.Q; ++j1) {
      const int q1 = (j1 + P) % P;
      const cplx r1 = scale * rf1[q1];
      for (int j2 = -g.Q; j2 <= g.Q; ++j2) {
        const int q2 = (j2 + P) % P;
        win[static_cast<size_t>(q1) * P + q2] = r1 * rf2[q2] * table.at(j1, j2);
      }
    }
    fftw_execute_dft(plan_inner, ws.win, ws.sout);

    // Aperture samples, Gregory-weighted, zero-padded to the 2Pa x 2Pb cell.
    auto* sout = reinterpret_cast<cplx*>(ws.sout);
    auto* pin = reinterpret_cast<cplx*>(ws.pin);
    std::memset(ws.pin, 0, sizeof(fftw_complex) * static_cast<size_t>(g.PA2) * g.PB2);
    const double cell = g.d1 * g.d2;
    for (int p1 = 0; p1 <= g.Pa; ++p1) {
      const double w1 = gregory_weight(p1, g.Pa) * cell;
      for (int p2 = 0; p2 <= g.Pb; ++p2)
        pin[static_cast<size_t>(p1) * g.PB2 + p2] =
            w1 * gregory_weight(p2, g.Pb) * sout[static_cast<size_t>(p1) * P + p2];
    }
    fftw_execute_dft(plan_outer, ws.pin, ws.pout);

    auto* pout = reinterpret_cast<cplx*>(ws.pout);
    out.resize(static_cast<size_t>(2 * M + 1) * (2 * N + 1));
    for (int ms = -M; ms <= M; ++ms) {
      const int b1 = (ms + g.PA2) % g.PA2;
      for (int ns = -N; ns <= N; ++ns) {
        const int b2 = (ns + g.PB2) % g.PB2;
        out[static_cast<size_t>(ms + M) * (2 * N + 1) + (ns + N)] =
            pout[static_cast<size_t>(b1) * g.PB2 + b2];
      }
    }
  }
};

// Split [0, n) into per-worker chunks, giving each worker its own workspace.
template <typename MakeWs, typename Body>
void parallel_chunks(int n, int threads, MakeWs make_ws, Body body) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    auto ws = make_ws();
    for (int i = 0; i < n; ++i) body(*ws, i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  const int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        auto ws = make_ws();
        for (int i = lo; i < hi; ++i) body(*ws, i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

} // namespace

cplx rect_factor(double xi, int k, double len) {
  const double w = -2.0 * pi * xi + k * pi / len;
  const double half = 0.5 * w * len;
  return len * sinc(half) * cplx{std::cos(half), std::sin(half)};
}

cplx rect_mode_transform(int j1, int j2, int k1, int k2, double a, double b) {
  return rect_factor(j1, k1, a) * rect_factor(j2, k2, b);
}

std::vector<cplx> exp_gram(int M, int N, double kappa0, double a, double b,
                           const GramParams& params) {
  ConvEngine eng(M, N, kappa0, a, b, params);
  const int rows = (2 * M + 1) * (2 * N + 1);
  std::vector<cplx> E(static_cast<size_t>(rows) * rows);
  parallel_chunks(
      rows, params.threads, [&] { return std::make_unique<ConvWorkspace>(eng.g); },
      [&](ConvWorkspace& ws, int col) {
        const int k1s = col / (2 * N + 1) - M;
        const int k2s = col % (2 * N + 1) - N;
        std::vector<cplx> O;
        eng.signed_column(ws, k1s, k2s, O);
        for (int r = 0; r < rows; ++r) E[static_cast<size_t>(r) * rows + col] = O[r];
      });
  return E;
}

GramTensor trig_gram(int M, int N, double kappa0, double a, double b, const GramParams& params) {
  ConvEngine eng(M, N, kappa0, a, b, params);
  GramTensor t;
  t.M = M;
  t.N = N;
  const int side = t.side();
  t.i1.assign(static_cast<size_t>(side) * side, {});
  t.i2.assign(static_cast<size_t>(side) * side, {});
  t.i3.assign(static_cast<size_t>(side) * side, {});

  // One job per unsigned (k1, k2); the job folds its <= 4 signed variants into
  // the column it exclusively owns (keeps the parallel fold deterministic).
  parallel_chunks(
      side, params.threads, [&] { return std::make_unique<ConvWorkspace>(eng.g); },
      [&](ConvWorkspace& ws, int col) {
        const int k1 = col / (N + 1);
        const int k2 = col % (N + 1);
        std::vector<cplx> O;
        const int n2s = 2 * N + 1;
        auto bin = [&](int ms, int ns) -> cplx {
          return O[static_cast<size_t>(ms + M) * n2s + (ns + N)];
        };
        for (int t1 : (k1 == 0 ? std::vector<int>{0} : std::vector<int>{1, -1}))
          for (int t2 : (k2 == 0 ? std::vector<int>{0} : std::vector<int>{1, -1})) {
            const int k1s = t1 * k1, k2s = t2 * k2;
            eng.signed_column(ws, k1s, k2s, O);
            // t-side weights: cos roles count sign multiplicity, sin roles
            // carry the sign (and cancel at zero index).
            const double tc1 = (k1 == 0) ? 2.0 : 1.0, tc2 = (k2 == 0) ? 2.0 : 1.0;
            const double ts1 = (k1 == 0) ? 0.0 : t1, ts2 = (k2 == 0) ? 0.0 : t2;
            for (int m = 0; m <= M; ++m)
              for (int n = 0; n <= N; ++n) {
                cplx a_cc, a_cs, a_sc;
                if (m > 0 && n > 0) {
                  const cplx opp = bin(m, n), opm = bin(m, -n), omp = bin(-m, n),
                             omm = bin(-m, -n);
                  a_cc = opp + opm + omp + omm;
                  a_cs = opp - opm + omp - omm;
                  a_sc = opp + opm - omp - omm;
                } else if (m == 0 && n > 0) {
                  a_cc = 2.0 * (bin(0, n) + bin(0, -n));
                  a_cs = 2.0 * (bin(0, n) - bin(0, -n));
                  a_sc = 0.0;
                } else if (m > 0) {
                  a_cc = 2.0 * (bin(m, 0) + bin(-m, 0));
                  a_cs = 0.0;
                  a_sc = 2.0 * (bin(m, 0) - bin(-m, 0));
                } else {
                  a_cc = 4.0 * bin(0, 0);
                  a_cs = 0.0;
                  a_sc = 0.0;
                }
                const size_t idx = static_cast<size_t>(t.row(m, n)) * side + col;
                t.i1[idx] += (-1.0 / 16.0) * tc1 * ts2 * a_cs;
                t.i2[idx] += (-1.0 / 16.0) * ts1 * tc2 * a_sc;
                t.i3[idx] += (1.0 / 16.0) * tc1 * tc2 * a_cc;
              }
          }
      });
  return t;
}

} // namespace cavrcs
