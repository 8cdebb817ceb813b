// Command-line driver: config in, timing lines + RCS sweep CSV out.
// --verify runs fast self-checks of the numerical kernels against
// independent quadrature/linear-algebra oracles on small instances.

#include "cavrcs/driver.hpp"
#include "cavrcs/farfield.hpp"
#include "cavrcs/gram.hpp"
#include "cavrcs/interface_system.hpp"
#include "cavrcs/kernel_table.hpp"
#include "cavrcs/modes.hpp"
#include "cavrcs/oscillatory.hpp"
#include "cavrcs/tbc.hpp"
#include "cavrcs/threading.hpp"
#include "cavrcs/vertical.hpp"

#include "CLI11.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

double rel_err(cplx got, cplx want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

struct VerifyReport {
  int failures = 0;
  void line(const std::string& name, bool pass, double measure, double bound) {
    std::printf("verify %-28s %s  (measure %.3g, bound %.3g)\n", name.c_str(),
                pass ? "pass" : "FAIL", measure, bound);
    if (!pass) ++failures;
  }
};

void verify_kernel_transform(VerifyReport& rep) {
  const double kappa0 = 2.0 * pi;
  const auto tbl = cavrcs::kernel_transform_table(kappa0, 1.0, 64, 10.0);
  // Zero frequency: the radial integral is elementary.
  const cplx want =
      (std::exp(cplx(0.0, kappa0 * std::sqrt(2.0))) - 1.0) / (cplx(0.0, kappa0) * 4.0 * pi);
  rep.line("kernel transform dc value", rel_err(tbl.at(0, 0), want) <= 1e-12,
           rel_err(tbl.at(0, 0), want), 1e-12);
  const double sym = rel_err(tbl.at(3, 4), tbl.at(5, 0));
  rep.line("kernel transform radial sym", sym <= 1e-12, sym, 1e-12);
}

void verify_regime_crossover(VerifyReport& rep) {
  const double R = std::sqrt(2.0), kappa0 = 2.0 * pi;
  double worst = 0.0;
  for (double mult : {10.0, 11.0, 12.0}) {
    const cplx r1 = cavrcs::bessel_osc_regime1(R, mult * 2.0 * pi, kappa0);
    const cplx r2 = cavrcs::bessel_osc_regime2(R, mult * 2.0 * pi, kappa0);
    worst = std::max(worst, rel_err(r2, r1));
  }
  rep.line("radial integral crossover", worst <= 1e-5, worst, 1e-5);
}

void verify_rect_transform(VerifyReport& rep) {
  using boost::math::quadrature::gauss;
  auto axis = [](int j, int k, double len) {
    const double w = -2.0 * pi * j + k * pi / len;
    auto f_re = [&](double y) { return std::cos(w * y); };
    auto f_im = [&](double y) { return std::sin(w * y); };
    return cplx(gauss<double, 64>::integrate(f_re, 0.0, len),
                gauss<double, 64>::integrate(f_im, 0.0, len));
  };
  const cplx got = cavrcs::rect_mode_transform(1, 1, 1, 1, 1.0, 1.0);
  const cplx want = axis(1, 1, 1.0) * axis(1, 1, 1.0);
  rep.line("rectangle mode transform", rel_err(got, want) <= 1e-12, rel_err(got, want), 1e-12);
}

void verify_gram_fft(VerifyReport& rep, int threads) {
  cavrcs::GramParams gp;
  gp.quad_grid = 128;
  gp.threads = threads;
  const auto fft = cavrcs::trig_gram(1, 1, 2.0 * pi, 1.0, 1.0, gp);
  const auto ora = cavrcs::oracle_gram_level(1, 1, 2.0 * pi, 1.0, 1.0, 1);
  double worst = 0.0;
  auto fold = [&](const std::vector<cplx>& f, const std::vector<cplx>& o) {
    double floor_ = 0.0;
    for (const cplx& v : o) floor_ = std::max(floor_, std::abs(v));
    floor_ *= 1e-2;
    for (size_t i = 0; i < f.size(); ++i)
      worst = std::max(worst, std::abs(f[i] - o[i]) / (std::abs(o[i]) + floor_));
  };
  fold(fft.i1, ora.i1);
  fold(fft.i2, ora.i2);
  fold(fft.i3, ora.i3);
  rep.line("tensor FFT vs quadrature", worst <= 1e-3, worst, 1e-3);
}

void verify_tridiag(VerifyReport& rep) {
  const int J = 30;
  const cplx d{0.31, 0.17};
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(J, J);
  for (int i = 0; i < J; ++i) {
    T(i, i) = -2.0 + d;
    if (i) T(i, i - 1) = T(i - 1, i) = 1.0;
  }
  const cplx detJ = Eigen::PartialPivLU<Eigen::MatrixXcd>(T).determinant();
  const cplx detJ1 =
      Eigen::PartialPivLU<Eigen::MatrixXcd>(T.topLeftCorner(J - 1, J - 1)).determinant();
  const cplx got = cavrcs::tridiag_lu_lastpivot(J, d, cavrcs::TridiagPattern::Dirichlet);
  rep.line("vertical last pivot", rel_err(got, detJ / detJ1) <= 1e-12,
           rel_err(got, detJ / detJ1), 1e-12);
}

void verify_pipeline(VerifyReport& rep, int threads) {
  const std::string text = "a = 1\nb = 1\nc = 0.3\neps_re_1 = 1\neps_im_1 = 0\n"
                           "wavelength = 1\nM = 2\nN = 2\nJ = 40\ntheta_deg = 0\n"
                           "quad_grid = 128\n";
  const cavrcs::CavityConfig cfg = cavrcs::parse_config(text);
  cavrcs::RunOptions opt;
  opt.threads = threads;
  const cavrcs::RunResult res = cavrcs::run_solver(cfg, opt);
  const double gap = std::abs(res.samples.at(0).rcs_tt_db - res.samples.at(0).rcs_pp_db);
  rep.line("normal-incidence pol symmetry", gap <= 1e-6, gap, 1e-6);

  // Surface divergence of the solved aperture field, with the vertical
  // derivative taken from the recovered level below the aperture.
  cavrcs::GramParams gp;
  gp.quad_grid = cfg.quad_grid;
  gp.threads = threads;
  const auto gram = cavrcs::trig_gram(cfg.M, cfg.N, cfg.kappa0, cfg.a, cfg.b, gp);
  const cavrcs::ModeIndexSets sets{cfg.M, cfg.N};
  const auto dtn = cavrcs::build_dtn_table(cfg);
  const auto tbc = cavrcs::build_tbc_blocks(sets, gram, cfg.kappa0, cfg.a, cfg.b, cfg.h());
  const auto sys = cavrcs::assemble_interface_system(sets, tbc, dtn);
  const auto wave = cavrcs::build_incident_wave(cfg.kappa0, 0.0, 0.0, 0.0);
  const auto aperture = cavrcs::solve_aperture(
      sys, cavrcs::build_incident_rhs(sets, wave, cfg.a, cfg.b, cfg.h()));
  const auto volume = cavrcs::recover_interior(aperture, dtn, cfg);
  const int top = volume.levels - 1;
  std::vector<cplx> de3(sets.size3());
  for (int i = 0; i < sets.size3(); ++i)
    de3[i] = (volume.at3(top, i) - volume.at3(top - 1, i)) / cfg.h();
  const double div = cavrcs::discrete_divergence_residual(aperture, de3, cfg.a, cfg.b);
  rep.line("aperture divergence residual", div <= 1e-10, div, 1e-10);
}

int run_verify(int threads) {
  VerifyReport rep;
  verify_kernel_transform(rep);
  verify_regime_crossover(rep);
  verify_rect_transform(rep);
  verify_gram_fft(rep, threads);
  verify_tridiag(rep);
  verify_pipeline(rep, threads);
  if (rep.failures) {
    std::printf("verify: %d check(s) FAILED\n", rep.failures);
    return 1;
  }
  std::printf("verify: all checks passed\n");
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backscatter RCS of an open rectangular cavity in a ground plane"};
  std::string config_path, out_path, cache_dir;
  bool cache_only = false, verify = false;
  int threads = cavrcs::default_thread_count();
  app.add_option("--config", config_path, "Config file (key = value lines)");
  app.add_option("--out", out_path, "Output CSV path (stdout when omitted)");
  app.add_option("--cache-dir", cache_dir, "Directory for the kernel-product tensor cache");
  app.add_flag("--cache-only", cache_only,
               "Compute and persist the tensor cache, then exit without solving");
  app.add_option("--threads", threads, "Worker-thread cap for all parallel phases");
  app.add_flag("--verify", verify, "Run the built-in oracle checks on small instances and exit");
  CLI11_PARSE(app, argc, argv);

  if (verify) {
    try {
      return run_verify(threads);
    } catch (const std::exception& e) {
      std::cerr << "verify error: " << e.what() << "\n";
      return 1;
    }
  }

  if (config_path.empty()) {
    std::cerr << "error: --config is required (or use --verify)\n";
    return 2;
  }
  if (cache_only && cache_dir.empty()) {
    std::cerr << "error: --cache-only requires --cache-dir\n";
    return 2;
  }
  if (threads < 1) {
    std::cerr << "error: --threads must be >= 1\n";
    return 2;
  }

  cavrcs::CavityConfig cfg;
  try {
    cfg = cavrcs::parse_config_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  cavrcs::RunResult res;
  try {
    cavrcs::RunOptions opt;
    opt.cache_dir = cache_dir;
    opt.cache_only = cache_only;
    opt.threads = threads;
    res = cavrcs::run_solver(cfg, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::printf("phase=T_singular seconds=%.6f\n", res.t_singular);
  std::printf("phase=T_assemble seconds=%.6f\n", res.t_assemble);
  std::printf("phase=T_solve seconds=%.6f\n", res.t_solve);
  std::printf("phase=T_RCS seconds=%.6f\n", res.t_rcs);
  if (!cache_only)
    std::fprintf(stderr, "interface system reciprocal condition estimate: %.3g\n", res.rcond);

  if (cache_only) return 0;

  try {
    std::ostringstream csv;
    cavrcs::emit_csv(csv, res.samples);
    if (out_path.empty()) {
      std::fflush(stdout);
      std::cout << csv.str();
    } else {
      std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
      if (!f) throw std::runtime_error("cannot open output file " + out_path);
      f << csv.str();
      if (!f) throw std::runtime_error("write failed for output file " + out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
