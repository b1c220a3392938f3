#pragma once

#include "hoti/lattice.hpp"
#include "hoti/spectrum.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hoti {

// Evenly spaced axis. A periodic axis excludes its upper end, so
// {0, 2pi, 128} yields 0, 2pi/128, ..., 2pi*127/128.
struct GridAxis {
  double min = 0.0;
  double max = 1.0;
  int steps = 1;
  bool periodic = false;

  std::vector<double> values() const;
  friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

void validate(const GridAxis& axis);

struct ButterflySlice {
  double phi = 0.0;
  std::vector<double> energies;
  std::vector<ModeClass> classes;
  int zecm_count = 0;
  double zero_gap = 0.0;
};

std::vector<ButterflySlice> butterfly(const std::vector<double>& phi_grid, const LatticeSpec& spec,
                                      const CouplingSpec& coupling_template, const ClassifierThresholds& th,
                                      int workers = 1);

struct PhasePoint {
  double p1 = 0.0;
  double p2 = 0.0;
  int zecm_count = 0;
  double zero_gap = 0.0;
  double edge_bandwidth = 0.0;
  std::array<bool, 4> corner_signature{};

  bool nontrivial() const { return zecm_count >= 2; }
};

PhasePoint evaluate_point(const LatticeSpec& spec, const CouplingSpec& coupling, const ClassifierThresholds& th,
                          double p1, double p2);

// Where the phase label changes between neighbouring rows of axis 1.
struct BoundaryPoint {
  double p2 = 0.0;
  double p1 = 0.0; // midpoint between the two rows
};

enum class ScanKind { gamma_phi, lambda1_lambda4 };

struct PhaseDiagram {
  ScanKind kind = ScanKind::gamma_phi;
  GridAxis axis1;
  GridAxis axis2;
  std::vector<PhasePoint> points; // axis1 outer, axis2 inner
  std::vector<BoundaryPoint> critical_lines;

  const PhasePoint& at(int i1, int i2) const { return points[static_cast<std::size_t>(i1 * axis2.steps + i2)]; }
};

PhaseDiagram hoti_phase_map(const GridAxis& gamma_axis, const GridAxis& phi_axis, const LatticeSpec& spec,
                            const CouplingSpec& coupling_template, const ClassifierThresholds& th, int workers = 1);

// The template supplies phi, gamma, lambda2 and lambda3 (pi, 1, 3, 3 for the
// reference map); lambda1 and lambda4 come from the axes.
CouplingSpec anisotropy_template();
PhaseDiagram anisotropy_map(const GridAxis& l1_axis, const GridAxis& l4_axis, const LatticeSpec& spec,
                            const CouplingSpec& coupling_template, const ClassifierThresholds& th, int workers = 1);

enum class CriticalIndicator { zecm, gap };

const char* indicator_name(CriticalIndicator i);
CriticalIndicator parse_indicator(const std::string& name);

struct CriticalOptions {
  CriticalIndicator indicator = CriticalIndicator::zecm;
  int phi_points = 33;        // grid over [0, pi]; only interior points of a window are used
  double gamma_min = 0.0;
  double gamma_max = 1.2;
  double coarse_step = 0.05;
  double resolution = 0.005;
  double gap_tol = 0.02;
  int workers = 1;

  friend bool operator==(const CriticalOptions&, const CriticalOptions&) = default;
};

void validate(const CriticalOptions& opt);

// Within the phi window (lo, hi): the first gamma at which some grid phi
// loses its zero-energy corner modes (or closes the zero gap), then the first
// gamma at which every grid phi has. Missing transitions are omitted.
std::vector<double> critical_gamma(double phi_lo, double phi_hi, const LatticeSpec& spec,
                                   const CouplingSpec& coupling_template, const ClassifierThresholds& th,
                                   const CriticalOptions& opt);

struct CriticalGammas {
  std::optional<double> first_low;      // some phi in (0, pi/2)
  std::optional<double> complete_low;   // all phi in (0, pi/2)
  std::optional<double> first_high;     // some phi in (pi/2, pi)
  std::optional<double> complete_high;  // all phi in (pi/2, pi)

  std::vector<double> list() const;
};

CriticalGammas critical_gammas(const LatticeSpec& spec, const CouplingSpec& coupling_template,
                               const ClassifierThresholds& th, const CriticalOptions& opt);

} // namespace hoti
