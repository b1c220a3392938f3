#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace hoti {

enum class Sublattice { A = 0, B = 1, C = 2, D = 3 };

char sublattice_name(Sublattice s);
Sublattice parse_sublattice(char c);

// Cell coordinates are 1-based; physical coordinates are 0-based.
struct SiteId {
  int cell_x = 1;
  int cell_y = 1;
  Sublattice sublattice = Sublattice::A;

  int x() const { return 2 * (cell_x - 1) + (sublattice == Sublattice::C || sublattice == Sublattice::D ? 1 : 0); }
  int y() const { return 2 * (cell_y - 1) + (sublattice == Sublattice::B || sublattice == Sublattice::D ? 1 : 0); }
  int parity() const { return (x() + y()) % 2; }

  friend bool operator==(const SiteId&, const SiteId&) = default;
};

std::string to_string(const SiteId& s);

enum class Boundary { open, periodic };

struct LatticeSpec {
  int nx = 8;
  int ny = 8;
  Boundary boundary = Boundary::open;

  int dimension() const { return 4 * nx * ny; }
  int width() const { return 2 * nx; }
  int height() const { return 2 * ny; }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

void validate(const LatticeSpec& spec);

enum class FluxPattern { uniform, intracell_only };

struct CouplingSpec {
  double gamma = 0.5;
  std::array<double, 4> lambda{1.0, 1.0, 1.0, 1.0};
  double phi = 0.0;
  FluxPattern flux_pattern = FluxPattern::uniform;

  friend bool operator==(const CouplingSpec&, const CouplingSpec&) = default;
};

void validate(const CouplingSpec& coupling);

// Which hopping parameter sets a link's amplitude.
//   lambda1: horizontal C -> A' (site rows with even y)
//   lambda2: vertical   D -> C' (site columns with odd x)
//   lambda3: vertical   B -> A' (site columns with even x)
//   lambda4: horizontal D -> B' (site rows with odd y)
enum class LinkClass { intra = 0, lambda1 = 1, lambda2 = 2, lambda3 = 3, lambda4 = 4 };

struct HoppingTerm {
  SiteId from;
  SiteId to;
  double amplitude = 0.0;
  double phase = 0.0;
  LinkClass link_class = LinkClass::intra;
};

class HamiltonianMatrix {
public:
  HamiltonianMatrix(LatticeSpec spec, Eigen::MatrixXcd entries);

  const LatticeSpec& spec() const { return spec_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  int dimension() const { return static_cast<int>(entries_.rows()); }

private:
  LatticeSpec spec_;
  Eigen::MatrixXcd entries_;
};

int site_index(const SiteId& site, const LatticeSpec& spec);
SiteId site_at(int index, const LatticeSpec& spec);
SiteId site_at_position(int x, int y, const LatticeSpec& spec);
std::array<SiteId, 4> lattice_corners(const LatticeSpec& spec);
bool is_corner(const SiteId& site, const LatticeSpec& spec);

std::vector<HoppingTerm> enumerate_links(const LatticeSpec& spec, const CouplingSpec& coupling);
HamiltonianMatrix build_hamiltonian(const std::vector<HoppingTerm>& links, const LatticeSpec& spec);
HamiltonianMatrix assemble(const LatticeSpec& spec, const CouplingSpec& coupling);

HamiltonianMatrix gauge_transform(const HamiltonianMatrix& h, const std::vector<double>& site_phases);

enum class PlaquetteKind { intra_cell, inter_cell, mixed };

struct Plaquette {
  int x = 0;  // lower-left physical coordinate
  int y = 0;
  PlaquetteKind kind = PlaquetteKind::intra_cell;
  double flux = 0.0;  // in [0, 2pi)
};

std::vector<Plaquette> plaquette_fluxes(const HamiltonianMatrix& h);

double max_hermiticity_error(const Eigen::MatrixXcd& m);

} // namespace hoti
