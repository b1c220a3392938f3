#include "hoti/lattice.hpp"

#include "hoti/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

namespace hoti {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double r = std::fmod(a, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

// Distance from a to the nearest multiple of 2pi.
double distance_to_zero_mod_2pi(double a) {
  double r = wrap_angle(a);
  return std::min(r, two_pi - r);
}

Sublattice sublattice_from_offsets(int ox, int oy) {
  if (ox == 0) return oy == 0 ? Sublattice::A : Sublattice::B;
  return oy == 0 ? Sublattice::C : Sublattice::D;
}

LinkClass horizontal_class(int x, int y) {
  if (x % 2 == 0) return LinkClass::intra;
  return y % 2 == 0 ? LinkClass::lambda1 : LinkClass::lambda4;
}

LinkClass vertical_class(int x, int y) {
  if (y % 2 == 0) return LinkClass::intra;
  return x % 2 == 0 ? LinkClass::lambda3 : LinkClass::lambda2;
}

double class_amplitude(LinkClass c, const CouplingSpec& coupling) {
  if (c == LinkClass::intra) return coupling.gamma;
  return coupling.lambda[static_cast<int>(c) - 1];
}

double vertical_phase(int x, int y, const CouplingSpec& coupling) {
  if (coupling.flux_pattern == FluxPattern::uniform) return wrap_angle(coupling.phi * x);
  if (y % 2 != 0) return 0.0;
  return wrap_angle(coupling.phi * ((x + 1) / 2));
}

} // namespace

char sublattice_name(Sublattice s) {
  return "ABCD"[static_cast<int>(s)];
}

Sublattice parse_sublattice(char c) {
  switch (c) {
  case 'A': case 'a': return Sublattice::A;
  case 'B': case 'b': return Sublattice::B;
  case 'C': case 'c': return Sublattice::C;
  case 'D': case 'd': return Sublattice::D;
  default:
    throw Error(ErrorCode::invalid_argument, std::string("unknown sublattice '") + c + "'");
  }
}

std::string to_string(const SiteId& s) {
  return std::string(1, sublattice_name(s.sublattice)) + "(" + std::to_string(s.cell_x) + "," +
         std::to_string(s.cell_y) + ")";
}

void validate(const LatticeSpec& spec) {
  if (spec.nx < 1 || spec.ny < 1)
    throw Error(ErrorCode::invalid_argument, "lattice needs at least one unit cell in each direction");
  if (spec.boundary == Boundary::periodic && (spec.nx < 2 || spec.ny < 2))
    throw Error(ErrorCode::invalid_argument, "periodic boundary needs at least 2x2 unit cells");
}

void validate(const CouplingSpec& coupling) {
  if (!(coupling.gamma >= 0) || !std::isfinite(coupling.gamma))
    throw Error(ErrorCode::invalid_argument, "gamma must be finite and >= 0");
  for (double l : coupling.lambda)
    if (!(l >= 0) || !std::isfinite(l))
      throw Error(ErrorCode::invalid_argument, "lambda values must be finite and >= 0");
  if (!std::isfinite(coupling.phi))
    throw Error(ErrorCode::invalid_argument, "phi must be finite");
}

HamiltonianMatrix::HamiltonianMatrix(LatticeSpec spec, Eigen::MatrixXcd entries)
    : spec_(spec), entries_(std::move(entries)) {
  if (entries_.rows() != spec_.dimension() || entries_.cols() != spec_.dimension())
    throw Error(ErrorCode::size, "matrix dimension does not match the lattice");
}

int site_index(const SiteId& site, const LatticeSpec& spec) {
  if (site.cell_x < 1 || site.cell_x > spec.nx || site.cell_y < 1 || site.cell_y > spec.ny)
    throw Error(ErrorCode::bounds, "site " + to_string(site) + " outside " + std::to_string(spec.nx) + "x" +
                                       std::to_string(spec.ny) + " lattice");
  return 4 * ((site.cell_y - 1) * spec.nx + (site.cell_x - 1)) + static_cast<int>(site.sublattice);
}

SiteId site_at(int index, const LatticeSpec& spec) {
  if (index < 0 || index >= spec.dimension())
    throw Error(ErrorCode::bounds, "site index " + std::to_string(index) + " out of range");
  int cell = index / 4;
  return SiteId{cell % spec.nx + 1, cell / spec.nx + 1, static_cast<Sublattice>(index % 4)};
}

SiteId site_at_position(int x, int y, const LatticeSpec& spec) {
  if (x < 0 || y < 0 || x >= spec.width() || y >= spec.height())
    throw Error(ErrorCode::bounds, "position (" + std::to_string(x) + "," + std::to_string(y) + ") outside lattice");
  return SiteId{x / 2 + 1, y / 2 + 1, sublattice_from_offsets(x % 2, y % 2)};
}

std::array<SiteId, 4> lattice_corners(const LatticeSpec& spec) {
  return {SiteId{1, 1, Sublattice::A}, SiteId{1, spec.ny, Sublattice::B}, SiteId{spec.nx, 1, Sublattice::C},
          SiteId{spec.nx, spec.ny, Sublattice::D}};
}

bool is_corner(const SiteId& site, const LatticeSpec& spec) {
  for (const auto& c : lattice_corners(spec))
    if (c == site) return true;
  return false;
}

std::vector<HoppingTerm> enumerate_links(const LatticeSpec& spec, const CouplingSpec& coupling) {
  validate(spec);
  validate(coupling);
  const bool periodic = spec.boundary == Boundary::periodic;
  if (periodic) {
    double strip_flux = coupling.flux_pattern == FluxPattern::uniform ? coupling.phi * spec.width()
                                                                      : coupling.phi * spec.nx;
    if (distance_to_zero_mod_2pi(strip_flux) > 1e-9)
      throw Error(ErrorCode::commensurability,
                  "periodic boundary requires the flux through a lattice row to be a multiple of 2pi");
  }

  const int w = spec.width();
  const int h = spec.height();
  std::vector<HoppingTerm> links;
  links.reserve(static_cast<std::size_t>(2 * w * h));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      SiteId from = site_at_position(x, y, spec);
      if (x + 1 < w || periodic) {
        LinkClass c = horizontal_class(x, y);
        links.push_back({from, site_at_position((x + 1) % w, y, spec), class_amplitude(c, coupling), 0.0, c});
      }
      if (y + 1 < h || periodic) {
        LinkClass c = vertical_class(x, y);
        links.push_back({from, site_at_position(x, (y + 1) % h, spec), class_amplitude(c, coupling),
                         vertical_phase(x, y, coupling), c});
      }
    }
  }
  return links;
}

HamiltonianMatrix build_hamiltonian(const std::vector<HoppingTerm>& links, const LatticeSpec& spec) {
  validate(spec);
  const int n = spec.dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  std::set<std::pair<int, int>> seen;
  for (const auto& link : links) {
    int i = site_index(link.from, spec);
    int j = site_index(link.to, spec);
    if (i == j) throw Error(ErrorCode::assembly, "self-link at " + to_string(link.from));
    int dx = std::abs(link.from.x() - link.to.x());
    int dy = std::abs(link.from.y() - link.to.y());
    if (spec.boundary == Boundary::periodic) {
      dx = std::min(dx, spec.width() - dx);
      dy = std::min(dy, spec.height() - dy);
    }
    if (dx + dy != 1)
      throw Error(ErrorCode::assembly,
                  "link " + to_string(link.from) + " -> " + to_string(link.to) + " is not nearest-neighbour");
    if (!seen.insert(std::minmax(i, j)).second)
      throw Error(ErrorCode::assembly, "duplicate link " + to_string(link.from) + " -> " + to_string(link.to));
    if (!(link.amplitude >= 0) || !std::isfinite(link.amplitude) || !std::isfinite(link.phase))
      throw Error(ErrorCode::assembly, "invalid amplitude or phase on link " + to_string(link.from));
    std::complex<double> t = std::polar(link.amplitude, link.phase);
    m(j, i) = t;
    m(i, j) = std::conj(t);
  }
  return HamiltonianMatrix(spec, std::move(m));
}

HamiltonianMatrix assemble(const LatticeSpec& spec, const CouplingSpec& coupling) {
  return build_hamiltonian(enumerate_links(spec, coupling), spec);
}

HamiltonianMatrix gauge_transform(const HamiltonianMatrix& h, const std::vector<double>& site_phases) {
  const int n = h.dimension();
  if (static_cast<int>(site_phases.size()) != n)
    throw Error(ErrorCode::size, "expected " + std::to_string(n) + " site phases, got " +
                                     std::to_string(site_phases.size()));
  Eigen::VectorXcd u(n);
  for (int s = 0; s < n; ++s) u(s) = std::polar(1.0, site_phases[static_cast<std::size_t>(s)]);
  Eigen::MatrixXcd m = u.asDiagonal() * h.entries() * u.conjugate().asDiagonal();
  return HamiltonianMatrix(h.spec(), std::move(m));
}

std::vector<Plaquette> plaquette_fluxes(const HamiltonianMatrix& h) {
  const LatticeSpec& spec = h.spec();
  const auto& m = h.entries();
  const bool periodic = spec.boundary == Boundary::periodic;
  const int w = spec.width();
  const int hgt = spec.height();
  const int px = periodic ? w : w - 1;
  const int py = periodic ? hgt : hgt - 1;

  auto idx = [&](int x, int y) { return site_index(site_at_position(x % w, y % hgt, spec), spec); };

  std::vector<Plaquette> out;
  out.reserve(static_cast<std::size_t>(std::max(0, px * py)));
  for (int y = 0; y < py; ++y) {
    for (int x = 0; x < px; ++x) {
      const std::array<int, 4> loop{idx(x, y), idx(x + 1, y), idx(x + 1, y + 1), idx(x, y + 1)};
      std::complex<double> product = 1.0;
      for (int k = 0; k < 4; ++k) {
        std::complex<double> t = m(loop[(k + 1) % 4], loop[k]);
        if (std::abs(t) == 0.0)
          throw Error(ErrorCode::incomplete_plaquette,
                      "plaquette at (" + std::to_string(x) + "," + std::to_string(y) + ") has a missing link");
        product *= t / std::abs(t);
      }
      PlaquetteKind kind = (x % 2 == 0 && y % 2 == 0)   ? PlaquetteKind::intra_cell
                           : (x % 2 == 1 && y % 2 == 1) ? PlaquetteKind::inter_cell
                                                        : PlaquetteKind::mixed;
      double flux = wrap_angle(std::arg(product));
      if (two_pi - flux < 1e-12) flux = 0.0;
      out.push_back({x, y, kind, flux});
    }
  }
  return out;
}

double max_hermiticity_error(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace hoti
