#include "hoti/steady_state.hpp"

#include "hoti/error.hpp"
#include "hoti/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace hoti {

PumpSpec four_corner_pump(const LatticeSpec& spec) {
  PumpSpec pump;
  for (const auto& c : lattice_corners(spec)) pump.drives.emplace_back(c, 1.0);
  return pump;
}

PumpSpec single_site_pump(const SiteId& site, std::complex<double> amplitude) {
  PumpSpec pump;
  pump.drives.emplace_back(site, amplitude);
  return pump;
}

SteadyStateSolver::SteadyStateSolver(const HamiltonianMatrix& h, double detuning, const DissipationSpec& diss)
    : spec_(h.spec()), detuning_(detuning) {
  if (!(diss.kappa > 0) || !std::isfinite(diss.kappa))
    throw Error(ErrorCode::invalid_argument, "kappa must be > 0");
  if (!std::isfinite(detuning)) throw Error(ErrorCode::invalid_argument, "detuning must be finite");
  m_ = h.entries();
  m_.diagonal().array() -= std::complex<double>(detuning, 0.5 * diss.kappa);
  lu_.compute(m_);
}

SteadyStateField SteadyStateSolver::solve(const PumpSpec& pump) const {
  if (pump.detuning != detuning_)
    throw Error(ErrorCode::invalid_argument, "pump detuning differs from the factorized detuning");
  const int n = spec_.dimension();
  Eigen::VectorXcd p = Eigen::VectorXcd::Zero(n);
  for (const auto& [site, amp] : pump.drives) p(site_index(site, spec_)) += amp;
  const double pnorm = p.norm();
  if (!(pnorm > 0)) throw Error(ErrorCode::invalid_argument, "pump has no nonzero drive");

  SteadyStateField field;
  field.spec = spec_;
  field.amplitudes = lu_.solve(-p);
  // One step of iterative refinement keeps the residual at round-off level.
  Eigen::VectorXcd r = m_ * field.amplitudes + p;
  field.amplitudes -= lu_.solve(r);
  field.residual = (m_ * field.amplitudes + p).norm() / pnorm;
  field.sspn = field.amplitudes.cwiseAbs2();
  return field;
}

SteadyStateField solve_steady_state(const HamiltonianMatrix& h, const PumpSpec& pump, const DissipationSpec& diss) {
  return SteadyStateSolver(h, pump.detuning, diss).solve(pump);
}

const char* strategy_name(NeighborhoodStrategy s) {
  switch (s) {
  case NeighborhoodStrategy::nearest6: return "nearest6";
  case NeighborhoodStrategy::manhattan2: return "manhattan2";
  case NeighborhoodStrategy::patch3x3: return "patch3x3";
  }
  return "nearest6";
}

NeighborhoodStrategy parse_strategy(const std::string& name) {
  if (name == "nearest6") return NeighborhoodStrategy::nearest6;
  if (name == "manhattan2") return NeighborhoodStrategy::manhattan2;
  if (name == "patch3x3") return NeighborhoodStrategy::patch3x3;
  throw Error(ErrorCode::invalid_argument, "unknown neighborhood strategy '" + name + "'");
}

std::vector<SiteId> corner_neighborhood(const SiteId& corner, const LatticeSpec& spec, NeighborhoodStrategy strategy) {
  if (!is_corner(corner, spec)) throw Error(ErrorCode::domain, to_string(corner) + " is not a lattice corner");
  const int cx = corner.x();
  const int cy = corner.y();
  const int sx = cx == 0 ? 1 : -1;
  const int sy = cy == 0 ? 1 : -1;

  // Offsets measured inward from the corner, so every corner gets the mirror
  // image of the same neighbourhood.
  std::vector<std::pair<int, int>> offsets;
  for (int dy = 0; dy < spec.height(); ++dy)
    for (int dx = 0; dx < spec.width(); ++dx) offsets.emplace_back(dx, dy);

  std::vector<std::pair<int, int>> chosen;
  switch (strategy) {
  case NeighborhoodStrategy::nearest6: {
    std::sort(offsets.begin(), offsets.end(), [](const auto& a, const auto& b) {
      return std::make_tuple(a.first * a.first + a.second * a.second, a.first, a.second) <
             std::make_tuple(b.first * b.first + b.second * b.second, b.first, b.second);
    });
    chosen.assign(offsets.begin(), offsets.begin() + std::min<std::size_t>(7, offsets.size()));
    break;
  }
  case NeighborhoodStrategy::manhattan2:
    for (const auto& o : offsets)
      if (o.first + o.second <= 2) chosen.push_back(o);
    break;
  case NeighborhoodStrategy::patch3x3:
    for (const auto& o : offsets) {
      if (o.first > 2 || o.second > 2) continue;
      if ((o.first == 2 && o.second == 1) || (o.first == 1 && o.second == 2)) continue;
      chosen.push_back(o);
    }
    break;
  }
  std::stable_sort(chosen.begin(), chosen.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(a.first * a.first + a.second * a.second, a.first, a.second) <
           std::make_tuple(b.first * b.first + b.second * b.second, b.first, b.second);
  });

  std::vector<SiteId> sites;
  sites.reserve(chosen.size());
  for (const auto& [dx, dy] : chosen) sites.push_back(site_at_position(cx + sx * dx, cy + sy * dy, spec));
  return sites;
}

ConcentrationReport concentration_factor(const SteadyStateField& field, const SiteId& corner,
                                         const std::vector<SiteId>& neighborhood) {
  if (std::find(neighborhood.begin(), neighborhood.end(), corner) == neighborhood.end())
    throw Error(ErrorCode::domain, "neighborhood does not contain the corner " + to_string(corner));
  ConcentrationReport rep;
  rep.corner = corner;
  rep.neighborhood = neighborhood;
  rep.n_corner = field.sspn(site_index(corner, field.spec));
  for (const auto& s : neighborhood) rep.n_patch += field.sspn(site_index(s, field.spec));
  if (!(rep.n_patch > 0))
    throw Error(ErrorCode::undefined_ratio, "no photons in the neighborhood of " + to_string(corner));
  rep.r = rep.n_corner / rep.n_patch;
  return rep;
}

std::array<double, 4> corner_ratios(const SteadyStateField& field, NeighborhoodStrategy strategy) {
  std::array<double, 4> r{};
  auto corners = lattice_corners(field.spec);
  for (int c = 0; c < 4; ++c)
    r[c] = concentration_factor(field, corners[c], corner_neighborhood(corners[c], field.spec, strategy)).r;
  return r;
}

std::vector<RPoint> r_vs_phi(const std::vector<double>& phi_grid, const LatticeSpec& spec,
                             const CouplingSpec& coupling_template, const DissipationSpec& diss,
                             const PumpSpec& pump, NeighborhoodStrategy strategy, int workers) {
  std::vector<RPoint> out(phi_grid.size());
  parallel_for(phi_grid.size(), workers, [&](std::size_t i) {
    CouplingSpec c = coupling_template;
    c.phi = phi_grid[i];
    SteadyStateField field = solve_steady_state(assemble(spec, c), pump, diss);
    out[i] = RPoint{phi_grid[i], corner_ratios(field, strategy)};
  });
  return out;
}

Eigen::MatrixXd sspn_map(const SteadyStateField& field) {
  const LatticeSpec& spec = field.spec;
  Eigen::MatrixXd grid = Eigen::MatrixXd::Zero(spec.height(), spec.width());
  for (int s = 0; s < spec.dimension(); ++s) {
    SiteId site = site_at(s, spec);
    grid(site.y(), site.x()) = field.sspn(s);
  }
  return grid;
}

} // namespace hoti
