#include "cavrcs/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cavrcs {

namespace {

std::string trim(const std::string& s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  auto b = std::find_if_not(s.begin(), s.end(), is_space);
  auto e = std::find_if_not(s.rbegin(), s.rend(), is_space).base();
  return (b < e) ? std::string(b, e) : std::string();
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " is not key=value: '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " has an empty key or value");
    if (!kv.emplace(key, val).second)
      throw std::invalid_argument("duplicate config key: " + key);
  }
  return kv;
}

const char* const known_keys[] = {
    "a",  "b",  "c",  "c1", "c2", "eps_re_1", "eps_im_1", "eps_re_2", "eps_im_2",
    "kappa0", "wavelength", "M",  "N",  "J",  "I_top", "alpha_deg", "theta_deg",
    "theta_start_deg", "theta_end_deg", "theta_step_deg", "phi_deg", "quad_grid",
    "regime_threshold"};

class KvReader {
public:
  explicit KvReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {
    for (const auto& [k, v] : kv_) {
      if (std::find_if(std::begin(known_keys), std::end(known_keys),
                       [&](const char* s) { return k == s; }) == std::end(known_keys))
        throw std::invalid_argument("unknown config key: " + k);
    }
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  double number(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end())
      throw std::invalid_argument("missing required config key: " + key);
    return to_number(key, it->second);
  }
  double number_or(const std::string& key, double dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : to_number(key, it->second);
  }
  int integer(const std::string& key) const {
    double v = number(key);
    if (v != std::floor(v))
      throw std::invalid_argument("config key " + key + " must be an integer");
    return static_cast<int>(v);
  }
  int integer_or(const std::string& key, int dflt) const {
    return has(key) ? integer(key) : dflt;
  }

private:
  static double to_number(const std::string& key, const std::string& val) {
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("config key " + key + " has a non-numeric value: " + val);
    }
    if (used != val.size())
      throw std::invalid_argument("config key " + key + " has a non-numeric value: " + val);
    return v;
  }

  std::map<std::string, std::string> kv_;
};

void require_positive(const char* key, double v) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string("config key ") + key + " must be > 0");
}

} // namespace

double CavityConfig::wavelength() const { return 2.0 * std::numbers::pi / kappa0; }

std::vector<double> CavityConfig::sweep_thetas_deg() const {
  // Index-based enumeration; the 1e-9 slack absorbs rounding in span/step.
  const double span = theta_end_deg - theta_start_deg;
  const int count =
      theta_step_deg > 0.0 ? static_cast<int>(std::floor(span / theta_step_deg + 1e-9)) + 1 : 1;
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(theta_start_deg + i * theta_step_deg);
  return out;
}

CavityConfig parse_config(const std::string& text) {
  KvReader kv(parse_kv(text));
  CavityConfig cfg;

  cfg.a = kv.number("a");
  cfg.b = kv.number("b");
  require_positive("a", cfg.a);
  require_positive("b", cfg.b);

  const bool has_c = kv.has("c"), has_c12 = kv.has("c1") || kv.has("c2");
  if (has_c && has_c12)
    throw std::invalid_argument("config keys c and c1/c2 are mutually exclusive");
  if (has_c) {
    cfg.c1 = kv.number("c");
    require_positive("c", cfg.c1);
    cfg.layered = false;
  } else {
    cfg.c1 = kv.number("c1");
    cfg.c2 = kv.number("c2");
    require_positive("c1", cfg.c1);
    require_positive("c2", cfg.c2);
    cfg.layered = true;
  }

  cfg.eps1 = {kv.number("eps_re_1"), kv.number_or("eps_im_1", 0.0)};
  if (cfg.layered) {
    cfg.eps2 = {kv.number("eps_re_2"), kv.number_or("eps_im_2", 0.0)};
  } else if (kv.has("eps_re_2") || kv.has("eps_im_2")) {
    throw std::invalid_argument("eps_re_2/eps_im_2 require a layered config (c1/c2)");
  }

  const bool has_k = kv.has("kappa0"), has_l = kv.has("wavelength");
  if (has_k == has_l)
    throw std::invalid_argument("exactly one of kappa0 or wavelength is required");
  if (has_k) {
    cfg.kappa0 = kv.number("kappa0");
    require_positive("kappa0", cfg.kappa0);
  } else {
    double lam = kv.number("wavelength");
    require_positive("wavelength", lam);
    cfg.kappa0 = 2.0 * std::numbers::pi / lam;
  }

  cfg.M = kv.integer("M");
  cfg.N = kv.integer("N");
  if (cfg.M < 1 || cfg.N < 1)
    throw std::invalid_argument("config keys M and N must be >= 1");
  cfg.J = kv.integer("J");
  if (cfg.J < 1) throw std::invalid_argument("config key J must be >= 1");

  if (cfg.layered) {
    cfg.I_top = kv.integer("I_top");
    if (cfg.I_top < 1) throw std::invalid_argument("config key I_top must be >= 1");
    const double h_bot = cfg.c2 / (cfg.J + 1);
    const double h_top = cfg.c1 / (cfg.I_top + 1);
    if (std::abs(h_bot - h_top) > 1e-12 * std::max(h_bot, h_top))
      throw std::invalid_argument(
          "layered grids must align: c2/(J+1) must equal c1/(I_top+1) to 1e-12 relative");
  } else if (kv.has("I_top")) {
    throw std::invalid_argument("I_top requires a layered config (c1/c2)");
  }

  cfg.alpha_deg = kv.number_or("alpha_deg", 0.0);
  cfg.phi_deg = kv.number_or("phi_deg", 0.0);

  const bool has_single = kv.has("theta_deg");
  const bool has_sweep =
      kv.has("theta_start_deg") || kv.has("theta_end_deg") || kv.has("theta_step_deg");
  if (has_single == has_sweep)
    throw std::invalid_argument(
        "exactly one of theta_deg or theta_start_deg/theta_end_deg/theta_step_deg is required");
  if (has_single) {
    cfg.theta_start_deg = cfg.theta_end_deg = kv.number("theta_deg");
    cfg.theta_step_deg = 1.0;
  } else {
    cfg.theta_start_deg = kv.number("theta_start_deg");
    cfg.theta_end_deg = kv.number("theta_end_deg");
    cfg.theta_step_deg = kv.number("theta_step_deg");
    if (!(cfg.theta_step_deg > 0.0))
      throw std::invalid_argument("config key theta_step_deg must be > 0");
    if (cfg.theta_end_deg < cfg.theta_start_deg)
      throw std::invalid_argument("theta_end_deg must be >= theta_start_deg");
  }
  if (cfg.theta_start_deg < 0.0 || cfg.theta_end_deg > 90.0)
    throw std::invalid_argument("theta must lie in [0, 90] degrees");

  // Floor chosen so the kernel-product tensors at the default grid stay a
  // few times under 1e-3 relative against the quadrature reference; the
  // build cost at 512 is ~0.5 s for small mode counts.
  cfg.quad_grid = kv.integer_or("quad_grid", std::max(512, 16 * std::max(cfg.M, cfg.N)));
  if (cfg.quad_grid < 2 || cfg.quad_grid % 2 != 0)
    throw std::invalid_argument("config key quad_grid must be a positive even integer");
  cfg.regime_threshold = kv.integer_or("regime_threshold", 10);
  if (cfg.regime_threshold < 1)
    throw std::invalid_argument("config key regime_threshold must be >= 1");

  return cfg;
}

CavityConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const CavityConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "a = " << cfg.a << "\nb = " << cfg.b << "\n";
  if (cfg.layered)
    out << "c1 = " << cfg.c1 << "\nc2 = " << cfg.c2 << "\n";
  else
    out << "c = " << cfg.c1 << "\n";
  out << "eps_re_1 = " << cfg.eps1.real() << "\neps_im_1 = " << cfg.eps1.imag() << "\n";
  if (cfg.layered)
    out << "eps_re_2 = " << cfg.eps2.real() << "\neps_im_2 = " << cfg.eps2.imag() << "\n";
  out << "kappa0 = " << cfg.kappa0 << "\n";
  out << "M = " << cfg.M << "\nN = " << cfg.N << "\nJ = " << cfg.J << "\n";
  if (cfg.layered) out << "I_top = " << cfg.I_top << "\n";
  out << "alpha_deg = " << cfg.alpha_deg << "\nphi_deg = " << cfg.phi_deg << "\n";
  if (cfg.theta_start_deg == cfg.theta_end_deg && cfg.theta_step_deg == 1.0) {
    out << "theta_deg = " << cfg.theta_start_deg << "\n";
  } else {
    out << "theta_start_deg = " << cfg.theta_start_deg
        << "\ntheta_end_deg = " << cfg.theta_end_deg
        << "\ntheta_step_deg = " << cfg.theta_step_deg << "\n";
  }
  out << "quad_grid = " << cfg.quad_grid << "\n";
  out << "regime_threshold = " << cfg.regime_threshold << "\n";
  return out.str();
}

IncidentWave build_incident_wave(double kappa0, double theta, double phi, double alpha) {
  if (!(kappa0 > 0.0)) throw std::invalid_argument("kappa0 must be > 0");
  if (theta < 0.0 || theta > std::numbers::pi / 2)
    throw std::invalid_argument("theta must lie in [0, pi/2]");
  IncidentWave w;
  w.kappa0 = kappa0;
  w.theta = theta;
  w.phi = phi;
  w.alpha = alpha;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  w.d = {-st * cp, -st * sp, -ct};
  w.theta_hat = {ct * cp, ct * sp, -st};
  w.phi_hat = {-sp, cp, 0.0};
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  for (int i = 0; i < 3; ++i) w.p[i] = ca * w.theta_hat[i] + sa * w.phi_hat[i];
  w.alpha1 = kappa0 * w.d[0];
  w.alpha2 = kappa0 * w.d[1];
  w.beta = -kappa0 * w.d[2];
  return w;
}

} // namespace cavrcs
