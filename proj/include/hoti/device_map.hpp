#pragma once

#include "hoti/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace hoti {

struct HardwareLimits {
  double omega0_min_ghz = 6.0;
  double omega0_max_ghz = 10.0;
  double delta_min_ghz = 0.5;
  double delta_max_ghz = 1.0;
  double hop_min_mhz = 5.0;
  double hop_max_mhz = 15.0;
};

// Frequencies are omega / 2pi in GHz.
struct FrequencyPlan {
  LatticeSpec spec;
  double omega0_ghz = 8.0;
  double delta_ghz = 0.7;

  double site_frequency(const SiteId& site) const;
  double gap(const SiteId& a, const SiteId& b) const;
};

double sublattice_offset(Sublattice s); // in units of Delta

FrequencyPlan assign_frequencies(const LatticeSpec& spec, double omega0_ghz, double delta_ghz,
                                 const HardwareLimits& limits = {});

// A coupler sits at the lower end of every vertical link (x, y) -> (x, y+1).
// For even y it also drives the horizontal links leaving (x, y) and (x, y+1)
// to the right, so one coupler carries the tones Delta, 2 Delta and 4 Delta.
struct CouplerId {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const CouplerId&, const CouplerId&) = default;
};

CouplerId coupler_for_link(const SiteId& from, const SiteId& to, const LatticeSpec& spec);

struct ModulationTone {
  SiteId from;
  SiteId to;
  CouplerId coupler;
  double tone_ghz = 0.0;
  double amplitude_mhz = 0.0;
  double phase = 0.0;
  LinkClass link_class = LinkClass::intra;
};

struct ModulationPlan {
  LatticeSpec spec;
  double scale_mhz = 10.0;
  std::vector<ModulationTone> tones; // sorted by coupler, then link order

  std::map<CouplerId, std::vector<const ModulationTone*>> by_coupler() const;
};

ModulationPlan tone_plan(const std::vector<HoppingTerm>& target, const FrequencyPlan& freq, double scale_mhz,
                         const HardwareLimits& limits = {});

// Inverse of tone_plan: amplitudes are divided by the scale again.
std::vector<HoppingTerm> links_from_plan(const ModulationPlan& plan);

struct Violation {
  std::string kind; // gap_mismatch, collision, coupler_conflict, hardware_range
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_plan(const ModulationPlan& plan, const FrequencyPlan& freq, double guard_mhz = 50.0,
                               const HardwareLimits& limits = {});

std::string device_plan_to_json(const FrequencyPlan& freq, const ModulationPlan& plan, const ValidationReport& report,
                                int indent = 2);

} // namespace hoti
