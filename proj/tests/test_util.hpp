#pragma once

#include "hoti/lattice.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace testutil {

inline constexpr double pi = std::numbers::pi;

inline hoti::LatticeSpec cells(int nx, int ny, hoti::Boundary b = hoti::Boundary::open) {
  return hoti::LatticeSpec{nx, ny, b};
}

inline hoti::CouplingSpec coupling(double gamma, double phi, std::array<double, 4> lambda = {1, 1, 1, 1},
                                   hoti::FluxPattern pattern = hoti::FluxPattern::uniform) {
  hoti::CouplingSpec c;
  c.gamma = gamma;
  c.phi = phi;
  c.lambda = lambda;
  c.flux_pattern = pattern;
  return c;
}

inline std::vector<double> sorted(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double wrap_angle(double a) {
  double r = std::fmod(a, 2 * pi);
  if (r < 0) r += 2 * pi;
  if (r > 2 * pi - 1e-9) r -= 2 * pi;
  return r;
}

// Distance between two angles on the circle.
inline double angle_distance(double a, double b) {
  double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, 2 * pi - d);
}

// Eigenvalues of a four-site ring with unit hops and total flux phi.
inline std::vector<double> ring_spectrum(double hop, double phi) {
  std::vector<double> e;
  for (int k = 0; k < 4; ++k) e.push_back(2 * hop * std::cos((phi + 2 * pi * k) / 4));
  std::sort(e.begin(), e.end());
  return e;
}

// Spectrum of the fully dimerized open lattice (gamma = 0, all lambda = 1):
// four isolated corners, edge dimers and inter-cell rings.
inline std::vector<double> decoupled_spectrum(int nx, int ny, double phi) {
  std::vector<double> e(4, 0.0);
  int dimers = 2 * (nx - 1) + 2 * (ny - 1);
  for (int k = 0; k < dimers; ++k) {
    e.push_back(1.0);
    e.push_back(-1.0);
  }
  auto ring = ring_spectrum(1.0, phi);
  for (int k = 0; k < (nx - 1) * (ny - 1); ++k) e.insert(e.end(), ring.begin(), ring.end());
  std::sort(e.begin(), e.end());
  return e;
}

inline std::vector<double> random_phases(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2 * pi);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = u(rng);
  return out;
}

} // namespace testutil
