#pragma once

#include "hoti/lattice.hpp"

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace hoti {

struct EigenSystem {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // column k belongs to eigenvalues(k)
};

enum class ModeClass { bulk = 0, edge = 1, corner = 2 };

const char* mode_class_name(ModeClass c);

struct ClassifierThresholds {
  double zero_window = 0.05;
  double corner_weight = 0.13;
  double edge_weight = 0.6;
  int corner_patch = 1;
  int boundary_ring = 2;
  double degeneracy_tol = 1e-8;

  friend bool operator==(const ClassifierThresholds&, const ClassifierThresholds&) = default;
};

void validate(const ClassifierThresholds& th);

struct ModeInfo {
  double energy = 0.0;
  ModeClass mode_class = ModeClass::bulk;
  double corner_weight = 0.0;
  double boundary_weight = 0.0;
  double ipr = 0.0;
  std::array<double, 4> corner_patch_weights{}; // ordered like lattice_corners()
};

// Modes follow the eigenvalue order. Inside a degenerate block (and inside the
// zero-energy window) the basis is rotated to diagonalize the corner-patch
// weight, so the entries describe those rotated vectors.
struct ModeCatalog {
  LatticeSpec spec;
  ClassifierThresholds thresholds;
  std::vector<ModeInfo> modes;
  Eigen::MatrixXcd vectors;

  int count(ModeClass c) const;
};

EigenSystem diagonalize(const HamiltonianMatrix& h);
Eigen::VectorXd eigenvalues_only(const HamiltonianMatrix& h);

ModeCatalog classify_modes(const EigenSystem& es, const LatticeSpec& spec, const ClassifierThresholds& th);

double zero_gap(const EigenSystem& es);
double zero_gap(const Eigen::VectorXd& sorted_eigenvalues);
int count_zecm(const ModeCatalog& cat);
double ipr(const Eigen::VectorXcd& v);

// Sum over corner-class modes of their weight in each corner patch.
std::array<double, 4> corner_occupation(const ModeCatalog& cat);
// Corners whose occupation reaches the corner-weight threshold.
std::array<bool, 4> corner_signature(const ModeCatalog& cat);

// Edge-class eigenvalue spread, max(E) - min(E) over edge modes with E >= 0.
double edge_bandwidth(const ModeCatalog& cat);

std::vector<int> corner_patch_sites(const SiteId& corner, const LatticeSpec& spec, int patch);
bool in_boundary_ring(const SiteId& site, const LatticeSpec& spec, int ring);

std::string catalog_to_json(const ModeCatalog& cat, int indent = 2);

} // namespace hoti
