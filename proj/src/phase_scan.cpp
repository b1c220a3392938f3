#include "hoti/phase_scan.hpp"

#include "hoti/error.hpp"
#include "hoti/parallel.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace hoti {

std::vector<double> GridAxis::values() const {
  validate(*this);
  std::vector<double> v(static_cast<std::size_t>(steps));
  if (steps == 1) {
    v[0] = min;
    return v;
  }
  const double denom = periodic ? steps : steps - 1;
  for (int i = 0; i < steps; ++i) v[static_cast<std::size_t>(i)] = min + (max - min) * i / denom;
  return v;
}

void validate(const GridAxis& axis) {
  if (axis.steps < 1) throw Error(ErrorCode::invalid_argument, "grid axis needs at least one step");
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || axis.max < axis.min)
    throw Error(ErrorCode::invalid_argument, "grid axis range must be finite with max >= min");
}

std::vector<ButterflySlice> butterfly(const std::vector<double>& phi_grid, const LatticeSpec& spec,
                                      const CouplingSpec& coupling_template, const ClassifierThresholds& th,
                                      int workers) {
  std::vector<ButterflySlice> out(phi_grid.size());
  parallel_for(phi_grid.size(), workers, [&](std::size_t i) {
    CouplingSpec c = coupling_template;
    c.phi = phi_grid[i];
    EigenSystem es = diagonalize(assemble(spec, c));
    ModeCatalog cat = classify_modes(es, spec, th);
    ButterflySlice& s = out[i];
    s.phi = phi_grid[i];
    s.energies.assign(es.eigenvalues.data(), es.eigenvalues.data() + es.eigenvalues.size());
    s.classes.reserve(cat.modes.size());
    for (const auto& m : cat.modes) s.classes.push_back(m.mode_class);
    s.zecm_count = count_zecm(cat);
    s.zero_gap = zero_gap(es);
  });
  return out;
}

PhasePoint evaluate_point(const LatticeSpec& spec, const CouplingSpec& coupling, const ClassifierThresholds& th,
                          double p1, double p2) {
  EigenSystem es = diagonalize(assemble(spec, coupling));
  ModeCatalog cat = classify_modes(es, spec, th);
  PhasePoint p;
  p.p1 = p1;
  p.p2 = p2;
  p.zecm_count = count_zecm(cat);
  p.zero_gap = zero_gap(es);
  p.edge_bandwidth = edge_bandwidth(cat);
  p.corner_signature = corner_signature(cat);
  return p;
}

namespace {

template <class Configure>
PhaseDiagram scan(ScanKind kind, const GridAxis& a1, const GridAxis& a2, const LatticeSpec& spec,
                  const CouplingSpec& coupling_template, const ClassifierThresholds& th, int workers,
                  Configure configure) {
  validate(th);
  const auto v1 = a1.values();
  const auto v2 = a2.values();
  PhaseDiagram d;
  d.kind = kind;
  d.axis1 = a1;
  d.axis2 = a2;
  d.points.resize(v1.size() * v2.size());
  parallel_for(d.points.size(), workers, [&](std::size_t k) {
    const double p1 = v1[k / v2.size()];
    const double p2 = v2[k % v2.size()];
    CouplingSpec c = coupling_template;
    configure(c, p1, p2);
    d.points[k] = evaluate_point(spec, c, th, p1, p2);
  });
  for (std::size_t j = 0; j < v2.size(); ++j)
    for (std::size_t i = 1; i < v1.size(); ++i)
      if (d.points[(i - 1) * v2.size() + j].nontrivial() != d.points[i * v2.size() + j].nontrivial())
        d.critical_lines.push_back({v2[j], 0.5 * (v1[i - 1] + v1[i])});
  return d;
}

} // namespace

PhaseDiagram hoti_phase_map(const GridAxis& gamma_axis, const GridAxis& phi_axis, const LatticeSpec& spec,
                            const CouplingSpec& coupling_template, const ClassifierThresholds& th, int workers) {
  return scan(ScanKind::gamma_phi, gamma_axis, phi_axis, spec, coupling_template, th, workers,
              [](CouplingSpec& c, double g, double phi) {
                c.gamma = g;
                c.phi = phi;
              });
}

CouplingSpec anisotropy_template() {
  CouplingSpec c;
  c.gamma = 1.0;
  c.lambda = {3.0, 3.0, 3.0, 3.0};
  c.phi = std::numbers::pi;
  return c;
}

PhaseDiagram anisotropy_map(const GridAxis& l1_axis, const GridAxis& l4_axis, const LatticeSpec& spec,
                            const CouplingSpec& coupling_template, const ClassifierThresholds& th, int workers) {
  return scan(ScanKind::lambda1_lambda4, l1_axis, l4_axis, spec, coupling_template, th, workers,
              [](CouplingSpec& c, double l1, double l4) {
                c.lambda[0] = l1;
                c.lambda[3] = l4;
              });
}

const char* indicator_name(CriticalIndicator i) {
  return i == CriticalIndicator::zecm ? "zecm" : "gap";
}

CriticalIndicator parse_indicator(const std::string& name) {
  if (name == "zecm") return CriticalIndicator::zecm;
  if (name == "gap") return CriticalIndicator::gap;
  throw Error(ErrorCode::invalid_argument, "unknown critical indicator '" + name + "'");
}

void validate(const CriticalOptions& opt) {
  if (opt.phi_points < 3) throw Error(ErrorCode::invalid_argument, "critical scan needs at least 3 phi points");
  if (!(opt.gamma_max > opt.gamma_min) || opt.gamma_min < 0)
    throw Error(ErrorCode::invalid_argument, "critical scan gamma range must satisfy 0 <= min < max");
  if (!(opt.coarse_step > 0)) throw Error(ErrorCode::invalid_argument, "coarse step must be > 0");
  if (!(opt.resolution > 0 && opt.resolution <= 0.02))
    throw Error(ErrorCode::invalid_argument, "resolution must lie in (0, 0.02]");
  if (!(opt.gap_tol > 0)) throw Error(ErrorCode::invalid_argument, "gap tolerance must be > 0");
}

namespace {

class WindowProbe {
public:
  WindowProbe(double lo, double hi, const LatticeSpec& spec, const CouplingSpec& tmpl,
              const ClassifierThresholds& th, const CriticalOptions& opt)
      : spec_(spec), tmpl_(tmpl), th_(th), opt_(opt) {
    GridAxis grid{0.0, std::numbers::pi, opt.phi_points, false};
    for (double phi : grid.values())
      if (phi > lo + 1e-12 && phi < hi - 1e-12) phis_.push_back(phi);
    if (phis_.empty()) throw Error(ErrorCode::invalid_argument, "phi window contains no grid points");
  }

  // Number of grid phi values that have lost the indicator at this gamma.
  int lost(double gamma) {
    auto it = cache_.find(gamma);
    if (it != cache_.end()) return it->second;
    std::vector<char> flags(phis_.size(), 0);
    parallel_for(phis_.size(), opt_.workers, [&](std::size_t i) {
      CouplingSpec c = tmpl_;
      c.gamma = gamma;
      c.phi = phis_[i];
      HamiltonianMatrix h = assemble(spec_, c);
      if (opt_.indicator == CriticalIndicator::gap) {
        flags[i] = zero_gap(eigenvalues_only(h)) < opt_.gap_tol;
      } else {
        flags[i] = count_zecm(classify_modes(diagonalize(h), spec_, th_)) == 0;
      }
    });
    int n = 0;
    for (char f : flags) n += f;
    cache_.emplace(gamma, n);
    return n;
  }

  int size() const { return static_cast<int>(phis_.size()); }

private:
  LatticeSpec spec_;
  CouplingSpec tmpl_;
  ClassifierThresholds th_;
  CriticalOptions opt_;
  std::vector<double> phis_;
  std::map<double, int> cache_;
};

template <class Pred>
std::optional<double> locate(const CriticalOptions& opt, Pred pred) {
  const int coarse = static_cast<int>(std::floor((opt.gamma_max - opt.gamma_min) / opt.coarse_step + 1e-9));
  double prev = opt.gamma_min;
  if (pred(prev)) return prev;
  for (int k = 1; k <= coarse + 1; ++k) {
    double g = std::min(opt.gamma_max, opt.gamma_min + k * opt.coarse_step);
    if (pred(g)) {
      double lo = prev, hi = g;
      while (hi - lo > opt.resolution) {
        double mid = 0.5 * (lo + hi);
        if (pred(mid)) hi = mid;
        else lo = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = g;
    if (g >= opt.gamma_max) break;
  }
  return std::nullopt;
}

std::pair<std::optional<double>, std::optional<double>> window_transitions(
    double lo, double hi, const LatticeSpec& spec, const CouplingSpec& tmpl, const ClassifierThresholds& th,
    const CriticalOptions& opt) {
  validate(opt);
  validate(th);
  WindowProbe probe(lo, hi, spec, tmpl, th, opt);
  auto first = locate(opt, [&](double g) { return probe.lost(g) > 0; });
  auto complete = locate(opt, [&](double g) { return probe.lost(g) == probe.size(); });
  return {first, complete};
}

} // namespace

std::vector<double> critical_gamma(double phi_lo, double phi_hi, const LatticeSpec& spec,
                                   const CouplingSpec& coupling_template, const ClassifierThresholds& th,
                                   const CriticalOptions& opt) {
  auto [first, complete] = window_transitions(phi_lo, phi_hi, spec, coupling_template, th, opt);
  std::vector<double> out;
  if (first) out.push_back(*first);
  if (complete) out.push_back(*complete);
  return out;
}

std::vector<double> CriticalGammas::list() const {
  std::vector<double> out;
  for (const auto& v : {first_low, complete_low, first_high, complete_high})
    if (v) out.push_back(*v);
  return out;
}

CriticalGammas critical_gammas(const LatticeSpec& spec, const CouplingSpec& coupling_template,
                               const ClassifierThresholds& th, const CriticalOptions& opt) {
  const double pi = std::numbers::pi;
  CriticalGammas g;
  std::tie(g.first_low, g.complete_low) = window_transitions(0.0, pi / 2, spec, coupling_template, th, opt);
  std::tie(g.first_high, g.complete_high) = window_transitions(pi / 2, pi, spec, coupling_template, th, opt);
  return g;
}

} // namespace hoti
