#pragma once

#include "hoti/lattice.hpp"
#include "hoti/phase_scan.hpp"
#include "hoti/spectrum.hpp"
#include "hoti/steady_state.hpp"

#include <string>
#include <vector>

namespace hoti {

struct ScanSettings {
  GridAxis gamma_axis{0.0, 1.2, 61, false};
  GridAxis phi_axis{0.0, 6.283185307179586, 128, true};
  GridAxis l1_axis{0.5, 3.0, 11, false};
  GridAxis l4_axis{0.5, 3.0, 11, false};
  int phi_steps = 128;
  bool critical = true;
  // fixed couplings of the (lambda1, lambda4) map
  double aniso_gamma = 1.0;
  double aniso_phi = 3.141592653589793;
  double aniso_lambda2 = 3.0;
  double aniso_lambda3 = 3.0;

  friend bool operator==(const ScanSettings&, const ScanSettings&) = default;
};

struct SteadySettings {
  double kappa = 0.03;
  double detuning = 0.0;
  std::string pump = "corners"; // or site:<cell_x>,<cell_y>,<sublattice>
  NeighborhoodStrategy neighborhood = NeighborhoodStrategy::nearest6;
  double r_threshold = 0.7;

  friend bool operator==(const SteadySettings&, const SteadySettings&) = default;
};

struct DeviceSettings {
  double omega0_ghz = 8.0;
  double delta_ghz = 0.7;
  double scale_mhz = 10.0;
  double guard_mhz = 50.0;

  friend bool operator==(const DeviceSettings&, const DeviceSettings&) = default;
};

struct RunConfig {
  LatticeSpec lattice;
  CouplingSpec coupling;
  ClassifierThresholds classifier;
  SteadySettings steady;
  ScanSettings scan;
  CriticalOptions critical;
  DeviceSettings device;
  std::string out_dir = ".";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Evaluates "2pi/3", "pi", "0.25*pi", "-1.5e-2" and plain numbers.
double parse_expression(const std::string& text);

// key = value lines; '#' starts a comment; [section] prefixes later keys
// with "section.". Every key is validated and unknown keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Applies one key as if it appeared in a config file.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

void validate(const RunConfig& cfg);
std::string serialize_config(const RunConfig& cfg);

std::vector<std::string> config_keys();

PumpSpec make_pump(const RunConfig& cfg);

} // namespace hoti
