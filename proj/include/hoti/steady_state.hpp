#pragma once

#include "hoti/lattice.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace hoti {

struct PumpSpec {
  std::vector<std::pair<SiteId, std::complex<double>>> drives;
  double detuning = 0.0;
};

// Unit in-phase drive on the four lattice corners.
PumpSpec four_corner_pump(const LatticeSpec& spec);
PumpSpec single_site_pump(const SiteId& site, std::complex<double> amplitude = 1.0);

struct DissipationSpec {
  double kappa = 0.03;
};

struct SteadyStateField {
  LatticeSpec spec;
  Eigen::VectorXcd amplitudes;
  Eigen::VectorXd sspn;
  double residual = 0.0; // ||M x + P||_2 / ||P||_2
};

// Factorization of M = H - (detuning + i kappa / 2) I, reusable across pumps.
class SteadyStateSolver {
public:
  SteadyStateSolver(const HamiltonianMatrix& h, double detuning, const DissipationSpec& diss);

  SteadyStateField solve(const PumpSpec& pump) const;
  double detuning() const { return detuning_; }

private:
  LatticeSpec spec_;
  Eigen::MatrixXcd m_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double detuning_;
};

SteadyStateField solve_steady_state(const HamiltonianMatrix& h, const PumpSpec& pump, const DissipationSpec& diss);

enum class NeighborhoodStrategy { nearest6, manhattan2, patch3x3 };

const char* strategy_name(NeighborhoodStrategy s);
NeighborhoodStrategy parse_strategy(const std::string& name);

// The corner comes first, followed by its neighbours.
std::vector<SiteId> corner_neighborhood(const SiteId& corner, const LatticeSpec& spec, NeighborhoodStrategy strategy);

struct ConcentrationReport {
  SiteId corner;
  std::vector<SiteId> neighborhood;
  double n_corner = 0.0;
  double n_patch = 0.0;
  double r = 0.0;
};

ConcentrationReport concentration_factor(const SteadyStateField& field, const SiteId& corner,
                                         const std::vector<SiteId>& neighborhood);

// R for each corner, ordered like lattice_corners().
std::array<double, 4> corner_ratios(const SteadyStateField& field, NeighborhoodStrategy strategy);

struct RPoint {
  double phi = 0.0;
  std::array<double, 4> r{};
};

std::vector<RPoint> r_vs_phi(const std::vector<double>& phi_grid, const LatticeSpec& spec,
                             const CouplingSpec& coupling_template, const DissipationSpec& diss,
                             const PumpSpec& pump, NeighborhoodStrategy strategy, int workers = 1);

// rows indexed by physical y, columns by physical x.
Eigen::MatrixXd sspn_map(const SteadyStateField& field);

} // namespace hoti
