#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace cavrcs {

// Geometry, material and discretization parameters of one solver run.
// Lengths are absolute; kappa0 is the free-space wavenumber.
struct CavityConfig {
  double a = 0.0;  // aperture extent along x1
  double b = 0.0;  // aperture extent along x2
  double c1 = 0.0; // depth of the (top) layer; total depth when homogeneous
  double c2 = 0.0; // depth of the bottom layer (layered runs only)
  bool layered = false;

  std::complex<double> eps1{1.0, 0.0}; // relative permittivity, top layer
  std::complex<double> eps2{1.0, 0.0}; // relative permittivity, bottom layer

  double kappa0 = 0.0;

  int M = 0; // mode count along x1
  int N = 0; // mode count along x2
  int J = 0;     // interior levels of the (bottom) layer
  int I_top = 0; // interior levels of the top layer (layered runs only)

  double alpha_deg = 0.0; // polarization angle
  double phi_deg = 0.0;   // azimuth of incidence
  double theta_start_deg = 0.0;
  double theta_end_deg = 0.0;
  double theta_step_deg = 1.0;

  int quad_grid = 0;         // frequency-grid parameter; points per axis = quad_grid+1
  int regime_threshold = 10; // oscillatory-integral regime cutoff, in units of 2*pi

  double depth() const { return layered ? c1 + c2 : c1; }
  // Vertical spacing. Homogeneous: h = c1/(J+1); layered runs require
  // c2/(J+1) == c1/(I_top+1) so both layers share one h.
  double h() const { return layered ? c2 / (J + 1) : c1 / (J + 1); }
  double wavelength() const;

  std::vector<double> sweep_thetas_deg() const;
};

// Parse a flat key=value document ('#' starts a comment). Unknown or duplicate
// keys, missing required keys and out-of-range values all throw
// std::invalid_argument with the offending key named.
CavityConfig parse_config(const std::string& text);
CavityConfig parse_config_file(const std::string& path);
std::string serialize_config(const CavityConfig& cfg);

// Plane-wave data derived from (kappa0, theta, phi, alpha). All angles radians.
struct IncidentWave {
  double kappa0 = 0.0;
  double theta = 0.0, phi = 0.0, alpha = 0.0;
  std::array<double, 3> d{};        // propagation direction, d3 <= 0
  std::array<double, 3> p{};        // polarization, unit, p.q = 0
  std::array<double, 3> theta_hat{};
  std::array<double, 3> phi_hat{};
  double alpha1 = 0.0; // kappa0 * d1
  double alpha2 = 0.0; // kappa0 * d2
  double beta = 0.0;   // -kappa0 * d3 >= 0
};

IncidentWave build_incident_wave(double kappa0, double theta, double phi, double alpha);

} // namespace cavrcs
