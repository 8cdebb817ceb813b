#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cavrcs_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CmdResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt", err = work_dir() / "stderr.txt";
  const std::string cmd = std::string("'") + CAVITY_RCS_PATH + "' " + args + " > '" +
                          out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  CmdResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = work_dir() / name;
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << text;
  return p;
}

const std::string kSmallConfig = "a = 1\nb = 1\nc = 0.3\neps_re_1 = 1\n"
                                 "wavelength = 1\nM = 2\nN = 2\nJ = 40\n"
                                 "theta_deg = 20\nquad_grid = 128\n";

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> ls;
  std::istringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) ls.push_back(l);
  return ls;
}

bool is_phase_line(const std::string& line, const std::string& name) {
  const std::string prefix = "phase=" + name + " seconds=";
  if (line.rfind(prefix, 0) != 0) return false;
  const std::string rest = line.substr(prefix.size());
  const size_t dot = rest.find('.');
  return dot != std::string::npos && rest.size() - dot - 1 == 6;
}

const std::string kCsvHeader =
    "theta_deg,phi_deg,alpha_deg,sigma,sigma_over_lambda2,rcs_tt_db,rcs_pp_db";

} // namespace

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_cli("").exit_code == 2);

  CmdResult r = run_cli("--cache-only --config nonexistent.cfg");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("--cache-dir") != std::string::npos);

  const fs::path cfg = write_config("ok.cfg", kSmallConfig);
  CHECK(run_cli("--config '" + cfg.string() + "' --threads 0").exit_code == 2);
}

TEST_CASE("cli: config diagnostics exit 2 with the key named") {
  const fs::path bad = write_config("bad.cfg", kSmallConfig + "frequencyy = 3\n");
  CmdResult r = run_cli("--config '" + bad.string() + "'");
  CHECK(r.exit_code == 2);
  CHECK(r.err.rfind("config error:", 0) == 0);
  CHECK(r.err.find("frequencyy") != std::string::npos);
}

TEST_CASE("cli: full run emits phase lines, csv file, condition estimate") {
  const fs::path cfg = write_config("run.cfg", kSmallConfig);
  const fs::path out1 = work_dir() / "run1.csv", out2 = work_dir() / "run2.csv";

  CmdResult r = run_cli("--config '" + cfg.string() + "' --out '" + out1.string() + "'");
  REQUIRE(r.exit_code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(is_phase_line(ls[0], "T_singular"));
  CHECK(is_phase_line(ls[1], "T_assemble"));
  CHECK(is_phase_line(ls[2], "T_solve"));
  CHECK(is_phase_line(ls[3], "T_RCS"));
  CHECK(r.err.find("reciprocal condition") != std::string::npos);

  const std::string csv = slurp(out1);
  const auto cls = lines_of(csv);
  REQUIRE(cls.size() == 2);
  CHECK(cls[0] == kCsvHeader);
  CHECK(cls[1].rfind("20,0,0,", 0) == 0);

  // Byte-identical rerun.
  CHECK(run_cli("--config '" + cfg.string() + "' --out '" + out2.string() + "'").exit_code == 0);
  CHECK(slurp(out2) == csv);
}

TEST_CASE("cli: csv goes to stdout when --out is omitted") {
  const fs::path cfg = write_config("stdout.cfg", kSmallConfig);
  CmdResult r = run_cli("--config '" + cfg.string() + "'");
  REQUIRE(r.exit_code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 6);
  CHECK(is_phase_line(ls[3], "T_RCS"));
  CHECK(ls[4] == kCsvHeader);
}

TEST_CASE("cli: cache-only persists tensors and skips the solve") {
  const fs::path cfg = write_config("cache.cfg", kSmallConfig);
  const fs::path cache = work_dir() / "cache";
  fs::create_directories(cache);

  CmdResult r = run_cli("--config '" + cfg.string() + "' --cache-dir '" + cache.string() +
                        "' --cache-only");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("theta_deg") == std::string::npos);
  CHECK(r.out.find("phase=T_singular") != std::string::npos);
  bool found_bin = false;
  for (const auto& e : fs::directory_iterator(cache))
    if (e.path().extension() == ".bin") found_bin = true;
  CHECK(found_bin);

  // A regular run against the warm cache matches a cold run byte for byte.
  const fs::path warm = work_dir() / "warm.csv", cold = work_dir() / "cold.csv";
  CHECK(run_cli("--config '" + cfg.string() + "' --cache-dir '" + cache.string() + "' --out '" +
                warm.string() + "'")
            .exit_code == 0);
  CHECK(run_cli("--config '" + cfg.string() + "' --out '" + cold.string() + "'").exit_code == 0);
  CHECK(slurp(warm) == slurp(cold));
}

TEST_CASE("cli: module failures exit 1 and name the phase") {
  const fs::path cfg = write_config("deep.cfg", "a = 1\nb = 1\nc = 0.3\neps_re_1 = 1\n"
                                                "wavelength = 1\nM = 12\nN = 12\nJ = 40\n"
                                                "theta_deg = 20\nquad_grid = 16\n");
  CmdResult r = run_cli("--config '" + cfg.string() + "'");
  CHECK(r.exit_code == 1);
  CHECK(r.err.rfind("error: phase ", 0) == 0);
  CHECK(r.err.find("T_singular") != std::string::npos);
}

TEST_CASE("cli: hundred-point sweep lands one row per angle") {
  const fs::path cfg = write_config("sweep.cfg", "a = 1\nb = 1\nc = 0.3\neps_re_1 = 1\n"
                                                 "wavelength = 1\nM = 2\nN = 2\nJ = 40\n"
                                                 "theta_start_deg = 0\ntheta_end_deg = 49.5\n"
                                                 "theta_step_deg = 0.5\nquad_grid = 128\n");
  const fs::path out = work_dir() / "sweep.csv";
  CmdResult r = run_cli("--config '" + cfg.string() + "' --out '" + out.string() + "' --threads 4");
  REQUIRE(r.exit_code == 0);
  CHECK(lines_of(slurp(out)).size() == 101);
}

TEST_CASE("cli: built-in verification suite passes") {
  CmdResult r = run_cli("--verify --threads 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verify: all checks passed") != std::string::npos);
}
