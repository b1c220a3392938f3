#include "hoti/device_map.hpp"

#include "hoti/error.hpp"
#include "hoti/format.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hoti {

namespace {

std::string link_name(const SiteId& a, const SiteId& b) {
  return to_string(a) + "-" + to_string(b);
}

std::string coupler_name(const CouplerId& c) {
  return "coupler(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

bool in_range(double v, double lo, double hi) {
  const double eps = 1e-9 * std::max(1.0, std::abs(hi));
  return v >= lo - eps && v <= hi + eps;
}

} // namespace

double sublattice_offset(Sublattice s) {
  switch (s) {
  case Sublattice::A: return 0.0;
  case Sublattice::B: return 1.0;
  case Sublattice::C: return 4.0;
  case Sublattice::D: return 3.0;
  }
  return 0.0;
}

double FrequencyPlan::site_frequency(const SiteId& site) const {
  site_index(site, spec);
  return omega0_ghz + sublattice_offset(site.sublattice) * delta_ghz;
}

double FrequencyPlan::gap(const SiteId& a, const SiteId& b) const {
  return std::abs(site_frequency(b) - site_frequency(a));
}

FrequencyPlan assign_frequencies(const LatticeSpec& spec, double omega0_ghz, double delta_ghz,
                                 const HardwareLimits& limits) {
  validate(spec);
  if (!in_range(omega0_ghz, limits.omega0_min_ghz, limits.omega0_max_ghz))
    throw Error(ErrorCode::hardware_range, "omega0/2pi = " + format_number(omega0_ghz) + " GHz outside [" +
                                               format_number(limits.omega0_min_ghz) + ", " +
                                               format_number(limits.omega0_max_ghz) + "] GHz");
  if (!in_range(delta_ghz, limits.delta_min_ghz, limits.delta_max_ghz))
    throw Error(ErrorCode::hardware_range, "Delta/2pi = " + format_number(delta_ghz) + " GHz outside [" +
                                               format_number(limits.delta_min_ghz) + ", " +
                                               format_number(limits.delta_max_ghz) + "] GHz");
  return FrequencyPlan{spec, omega0_ghz, delta_ghz};
}

CouplerId coupler_for_link(const SiteId& from, const SiteId& to, const LatticeSpec& spec) {
  const int x0 = from.x(), y0 = from.y(), x1 = to.x(), y1 = to.y();
  if (x0 == x1) {
    if (std::abs(y1 - y0) == 1) return CouplerId{x0, std::min(y0, y1)};
    return CouplerId{x0, spec.height() - 1};
  }
  if (y0 != y1) throw Error(ErrorCode::domain, "link " + link_name(from, to) + " is not nearest-neighbour");
  int left = (x1 == x0 + 1) ? x0 : (x0 == x1 + 1 ? x1 : std::max(x0, x1));
  return CouplerId{left, y0 - (y0 % 2)};
}

std::map<CouplerId, std::vector<const ModulationTone*>> ModulationPlan::by_coupler() const {
  std::map<CouplerId, std::vector<const ModulationTone*>> out;
  for (const auto& t : tones) out[t.coupler].push_back(&t);
  return out;
}

ModulationPlan tone_plan(const std::vector<HoppingTerm>& target, const FrequencyPlan& freq, double scale_mhz,
                         const HardwareLimits& limits) {
  if (!(scale_mhz > 0) || !std::isfinite(scale_mhz))
    throw Error(ErrorCode::invalid_argument, "scale must be a positive number of MHz");
  ModulationPlan plan;
  plan.spec = freq.spec;
  plan.scale_mhz = scale_mhz;
  plan.tones.reserve(target.size());
  for (const auto& link : target) {
    const double amp = scale_mhz * link.amplitude;
    if (!in_range(amp, limits.hop_min_mhz, limits.hop_max_mhz))
      throw Error(ErrorCode::hardware_range, "link " + link_name(link.from, link.to) + " needs " +
                                                 format_number(amp) + " MHz, outside [" +
                                                 format_number(limits.hop_min_mhz) + ", " +
                                                 format_number(limits.hop_max_mhz) + "] MHz");
    ModulationTone tone;
    tone.from = link.from;
    tone.to = link.to;
    tone.coupler = coupler_for_link(link.from, link.to, freq.spec);
    tone.tone_ghz = freq.gap(link.from, link.to);
    tone.amplitude_mhz = amp;
    tone.phase = link.phase;
    tone.link_class = link.link_class;
    plan.tones.push_back(tone);
  }
  std::stable_sort(plan.tones.begin(), plan.tones.end(),
                   [](const ModulationTone& a, const ModulationTone& b) { return a.coupler < b.coupler; });
  return plan;
}

std::vector<HoppingTerm> links_from_plan(const ModulationPlan& plan) {
  std::vector<HoppingTerm> links;
  links.reserve(plan.tones.size());
  for (const auto& t : plan.tones)
    links.push_back({t.from, t.to, t.amplitude_mhz / plan.scale_mhz, t.phase, t.link_class});
  return links;
}

ValidationReport validate_plan(const ModulationPlan& plan, const FrequencyPlan& freq, double guard_mhz,
                               const HardwareLimits& limits) {
  ValidationReport report;
  auto add = [&report](std::string kind, std::string where, std::string msg) {
    report.violations.push_back({std::move(kind), std::move(where), std::move(msg)});
  };
  const double guard_ghz = guard_mhz * 1e-3;
  const double d = freq.delta_ghz;
  const double tol = 1e-9;

  if (!in_range(freq.omega0_ghz, limits.omega0_min_ghz, limits.omega0_max_ghz))
    add("hardware_range", "omega0", "omega0/2pi = " + format_number(freq.omega0_ghz) + " GHz out of range");
  if (!in_range(freq.delta_ghz, limits.delta_min_ghz, limits.delta_max_ghz))
    add("hardware_range", "delta", "Delta/2pi = " + format_number(freq.delta_ghz) + " GHz out of range");

  // Every site's incident links, with their frequency gaps.
  const int n = plan.spec.dimension();
  std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(n));
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < plan.tones.size(); ++k) {
    const auto& t = plan.tones[k];
    int i = site_index(t.from, plan.spec), j = site_index(t.to, plan.spec);
    incident[static_cast<std::size_t>(i)].push_back(k);
    incident[static_cast<std::size_t>(j)].push_back(k);
    if (!seen.insert(std::minmax(i, j)).second)
      add("duplicate_link", link_name(t.from, t.to), "link carries more than one tone");
  }

  for (std::size_t k = 0; k < plan.tones.size(); ++k) {
    const auto& t = plan.tones[k];
    const std::string where = link_name(t.from, t.to);
    const double gap = freq.gap(t.from, t.to);

    // (a) tone matches the link's gap, which must be one of the ladder tones
    if (std::abs(t.tone_ghz - gap) > tol)
      add("gap_mismatch", where,
          "tone " + format_number(t.tone_ghz) + " GHz does not match gap " + format_number(gap) + " GHz");
    bool on_ladder = false;
    for (double m : {1.0, 2.0, 4.0}) on_ladder |= std::abs(t.tone_ghz - m * d) <= tol;
    if (!on_ladder) add("gap_mismatch", where, "tone " + format_number(t.tone_ghz) + " GHz is not Delta, 2 Delta or 4 Delta");

    // (b) no tone may drive another link sharing a site with a different gap
    for (const SiteId& end : {t.from, t.to}) {
      for (std::size_t other : incident[static_cast<std::size_t>(site_index(end, plan.spec))]) {
        if (other == k) continue;
        const auto& o = plan.tones[other];
        const double other_gap = freq.gap(o.from, o.to);
        if (std::abs(other_gap - gap) <= tol) continue;
        if (std::abs(t.tone_ghz - other_gap) < guard_ghz)
          add("collision", where,
              "tone " + format_number(t.tone_ghz) + " GHz within " + format_number(guard_mhz) +
                  " MHz of neighbouring link " + link_name(o.from, o.to) + " gap " + format_number(other_gap) + " GHz");
      }
    }

    // (c) hopping strength window
    if (!in_range(t.amplitude_mhz, limits.hop_min_mhz, limits.hop_max_mhz))
      add("hardware_range", where, "hopping " + format_number(t.amplitude_mhz) + " MHz out of range");
  }

  for (const auto& [coupler, tones] : plan.by_coupler()) {
    for (std::size_t a = 0; a < tones.size(); ++a)
      for (std::size_t b = a + 1; b < tones.size(); ++b)
        if (std::abs(tones[a]->tone_ghz - tones[b]->tone_ghz) <= tol)
          add("coupler_conflict", coupler_name(coupler),
              "links " + link_name(tones[a]->from, tones[a]->to) + " and " + link_name(tones[b]->from, tones[b]->to) +
                  " share tone " + format_number(tones[a]->tone_ghz) + " GHz");
  }
  return report;
}

std::string device_plan_to_json(const FrequencyPlan& freq, const ModulationPlan& plan, const ValidationReport& report,
                                int indent) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "device_plan";
  j["lattice"] = {{"nx", plan.spec.nx}, {"ny", plan.spec.ny}};
  j["omega0_ghz"] = round_sig(freq.omega0_ghz);
  j["delta_ghz"] = round_sig(freq.delta_ghz);
  j["scale_mhz"] = round_sig(plan.scale_mhz);

  json sites = json::array();
  for (int s = 0; s < plan.spec.dimension(); ++s) {
    SiteId id = site_at(s, plan.spec);
    sites.push_back({{"site", to_string(id)}, {"x", id.x()}, {"y", id.y()},
                     {"frequency_ghz", round_sig(freq.site_frequency(id))}});
  }
  j["sites"] = std::move(sites);

  std::set<double> distinct;
  json couplers = json::array();
  for (const auto& [coupler, tones] : plan.by_coupler()) {
    json list = json::array();
    for (const auto* t : tones) {
      distinct.insert(round_sig(t->tone_ghz));
      list.push_back({{"from", to_string(t->from)},
                      {"to", to_string(t->to)},
                      {"tone_ghz", round_sig(t->tone_ghz)},
                      {"amplitude_mhz", round_sig(t->amplitude_mhz)},
                      {"phase", round_sig(t->phase)}});
    }
    couplers.push_back({{"x", coupler.x}, {"y", coupler.y}, {"tones", std::move(list)}});
  }
  j["couplers"] = std::move(couplers);
  j["tone_set_ghz"] = json(std::vector<double>(distinct.begin(), distinct.end()));

  json viol = json::array();
  for (const auto& v : report.violations)
    viol.push_back({{"kind", v.kind}, {"where", v.where}, {"message", v.message}});
  j["validation"] = {{"ok", report.ok()}, {"violations", std::move(viol)}};
  return j.dump(indent);
}

} // namespace hoti
