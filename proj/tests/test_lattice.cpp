#include "doctest.h"

#include "hoti/error.hpp"
#include "hoti/lattice.hpp"
#include "hoti/spectrum.hpp"
#include "test_util.hpp"

#include <map>
#include <set>

using namespace hoti;
using namespace testutil;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

} // namespace

TEST_CASE("site indexing") {
  LatticeSpec s = cells(8, 8);
  CHECK(site_index({1, 1, Sublattice::A}, s) == 0);
  CHECK(site_index({8, 8, Sublattice::D}, s) == 255);
  CHECK(s.dimension() == 256);

  std::set<std::pair<int, int>> positions;
  for (int i = 0; i < s.dimension(); ++i) {
    SiteId id = site_at(i, s);
    CHECK(site_index(id, s) == i);
    positions.insert({id.x(), id.y()});
    CHECK(site_at_position(id.x(), id.y(), s) == id);
  }
  CHECK(positions.size() == 256);
  CHECK(positions.begin()->first == 0);
  CHECK(positions.rbegin()->first == 15);

  int b12 = site_index({1, 2, Sublattice::B}, s);
  CHECK(site_at(b12, s) == SiteId{1, 2, Sublattice::B});

  CHECK(code_of([&] { site_index({9, 1, Sublattice::A}, s); }) == ErrorCode::bounds);
  CHECK(code_of([&] { site_index({1, 0, Sublattice::A}, s); }) == ErrorCode::bounds);
  CHECK(code_of([&] { site_at(256, s); }) == ErrorCode::bounds);
}

TEST_CASE("sublattice offsets and corners") {
  LatticeSpec s = cells(8, 8);
  CHECK(SiteId{1, 1, Sublattice::A}.x() == 0);
  CHECK(SiteId{1, 1, Sublattice::B}.y() == 1);
  CHECK(SiteId{1, 1, Sublattice::C}.x() == 1);
  CHECK(SiteId{3, 2, Sublattice::D}.x() == 5);
  CHECK(SiteId{3, 2, Sublattice::D}.y() == 3);

  auto c = lattice_corners(s);
  CHECK(c[0] == SiteId{1, 1, Sublattice::A});
  CHECK(c[1] == SiteId{1, 8, Sublattice::B});
  CHECK(c[2] == SiteId{8, 1, Sublattice::C});
  CHECK(c[3] == SiteId{8, 8, Sublattice::D});
  for (const auto& k : c) CHECK(is_corner(k, s));
  CHECK_FALSE(is_corner({1, 1, Sublattice::D}, s));
  CHECK(to_string(c[3]) == "D(8,8)");
}

TEST_CASE("link enumeration matches a brute-force neighbour scan") {
  for (auto [nx, ny] : {std::pair{8, 8}, std::pair{3, 5}, std::pair{1, 1}}) {
    LatticeSpec s = cells(nx, ny);
    std::set<std::pair<int, int>> expected;
    for (int i = 0; i < s.dimension(); ++i)
      for (int j = i + 1; j < s.dimension(); ++j) {
        SiteId a = site_at(i, s), b = site_at(j, s);
        if (std::abs(a.x() - b.x()) + std::abs(a.y() - b.y()) == 1) expected.insert({i, j});
      }
    auto links = enumerate_links(s, coupling(0.5, 0.0));
    std::set<std::pair<int, int>> got;
    for (const auto& l : links) {
      int i = site_index(l.from, s), j = site_index(l.to, s);
      got.insert({std::min(i, j), std::max(i, j)});
    }
    CHECK(got.size() == links.size());
    CHECK(got == expected);
  }

  auto links = enumerate_links(cells(8, 8), coupling(0.5, 0.0));
  CHECK(links.size() == 480);
  int intra = 0;
  for (const auto& l : links) intra += l.link_class == LinkClass::intra;
  CHECK(intra == 256);
  CHECK(enumerate_links(cells(1, 1), coupling(0.5, 0.0)).size() == 4);
}

TEST_CASE("link amplitudes follow the class geometry") {
  LatticeSpec s = cells(4, 3);
  auto links = enumerate_links(s, coupling(0.25, 0.0, {1.5, 2.5, 3.5, 4.5}));
  std::map<LinkClass, int> counts;
  for (const auto& l : links) {
    bool horizontal = l.from.y() == l.to.y();
    int x = std::min(l.from.x(), l.to.x());
    int y = std::min(l.from.y(), l.to.y());
    bool inter = horizontal ? (x % 2 == 1) : (y % 2 == 1);
    LinkClass expected = LinkClass::intra;
    if (inter && horizontal) expected = (y % 2 == 0) ? LinkClass::lambda1 : LinkClass::lambda4;
    if (inter && !horizontal) expected = (x % 2 == 1) ? LinkClass::lambda2 : LinkClass::lambda3;
    CHECK(l.link_class == expected);
    double amp = expected == LinkClass::intra ? 0.25 : 0.5 + static_cast<int>(expected);
    CHECK(l.amplitude == doctest::Approx(amp));
    counts[l.link_class]++;
  }
  CHECK(counts[LinkClass::lambda1] == 3 * 3);
  CHECK(counts[LinkClass::lambda4] == 3 * 3);
  CHECK(counts[LinkClass::lambda2] == 4 * 2);
  CHECK(counts[LinkClass::lambda3] == 4 * 2);
}

TEST_CASE("single ring spectrum") {
  for (double phi : {0.0, pi / 3, pi / 2, pi, 5.0}) {
    auto h = assemble(cells(1, 1), coupling(1.0, phi));
    auto e = sorted(eigenvalues_only(h));
    CHECK(max_abs_diff(e, ring_spectrum(1.0, phi)) < 1e-12);
  }
  auto e0 = sorted(eigenvalues_only(assemble(cells(1, 1), coupling(1.0, 0.0))));
  CHECK(max_abs_diff(e0, {-2, 0, 0, 2}) < 1e-12);
  auto epi = sorted(eigenvalues_only(assemble(cells(1, 1), coupling(1.0, pi))));
  CHECK(max_abs_diff(epi, {-std::sqrt(2.0), -std::sqrt(2.0), std::sqrt(2.0), std::sqrt(2.0)}) < 1e-12);
}

TEST_CASE("hamiltonian structure") {
  for (auto pattern : {FluxPattern::uniform, FluxPattern::intracell_only})
    for (double phi : {0.0, 0.7, pi, 2 * pi / 3})
      for (double gamma : {0.0, 0.45, 1.3}) {
        auto h = assemble(cells(8, 8), coupling(gamma, phi, {1, 0.7, 1.2, 2}, pattern));
        const auto& m = h.entries();
        CHECK(max_hermiticity_error(m) <= 1e-12);
        bool ok = true;
        for (int i = 0; i < h.dimension(); ++i)
          for (int j = 0; j < h.dimension(); ++j) {
            if (std::abs(m(i, j)) == 0.0) continue;
            SiteId a = site_at(i, h.spec()), b = site_at(j, h.spec());
            int d = std::abs(a.x() - b.x()) + std::abs(a.y() - b.y());
            ok = ok && d == 1 && a.parity() != b.parity();
          }
        CHECK(ok);
      }
}

TEST_CASE("plaquette fluxes") {
  std::vector<double> grid;
  for (int k = 0; k < 17; ++k) grid.push_back(2 * pi * k / 17);

  for (double phi : grid) {
    auto h = assemble(cells(5, 4), coupling(0.6, phi));
    auto plaquettes = plaquette_fluxes(h);
    CHECK(plaquettes.size() == 9 * 7);
    double worst = 0;
    for (const auto& p : plaquettes) worst = std::max(worst, angle_distance(p.flux, phi));
    CHECK(worst < 1e-10);
  }
  for (double phi : grid) {
    auto h = assemble(cells(5, 4), coupling(0.6, phi, {1, 1, 1, 1}, FluxPattern::intracell_only));
    double worst = 0;
    for (const auto& p : plaquette_fluxes(h)) {
      double want = p.kind == PlaquetteKind::intra_cell ? phi : 0.0;
      worst = std::max(worst, angle_distance(p.flux, want));
    }
    CHECK(worst < 1e-10);
  }

  auto h = assemble(cells(8, 8), coupling(0.5, 2 * pi / 3));
  for (const auto& p : plaquette_fluxes(h)) CHECK(angle_distance(p.flux, 2 * pi / 3) < 1e-10);

  auto hpi = assemble(cells(8, 8), coupling(0.5, pi, {1, 1, 1, 1}, FluxPattern::intracell_only));
  int intra = 0;
  for (const auto& p : plaquette_fluxes(hpi)) {
    if (p.kind == PlaquetteKind::intra_cell) {
      ++intra;
      CHECK(angle_distance(p.flux, pi) < 1e-10);
    } else if (p.kind == PlaquetteKind::inter_cell) {
      CHECK(angle_distance(p.flux, 0.0) < 1e-10);
    }
  }
  CHECK(intra == 64);

  auto h0 = assemble(cells(8, 8), coupling(0.5, 0.0));
  for (const auto& p : plaquette_fluxes(h0)) CHECK(angle_distance(p.flux, 0.0) < 1e-12);

  auto zero = assemble(cells(2, 2), coupling(0.0, 0.3));
  CHECK(code_of([&] { plaquette_fluxes(zero); }) == ErrorCode::incomplete_plaquette);
}

TEST_CASE("gauge transformations") {
  auto h = assemble(cells(6, 6), coupling(0.55, 1.1, {1, 0.8, 1.3, 0.9}));
  std::vector<double> zeros(static_cast<std::size_t>(h.dimension()), 0.0);
  CHECK((gauge_transform(h, zeros).entries() - h.entries()).cwiseAbs().maxCoeff() == 0.0);

  auto ref = sorted(eigenvalues_only(h));
  auto ref_flux = plaquette_fluxes(h);
  for (unsigned seed : {1u, 2u, 3u}) {
    auto g = gauge_transform(h, random_phases(h.dimension(), seed));
    CHECK(max_hermiticity_error(g.entries()) <= 1e-12);
    CHECK(max_abs_diff(sorted(eigenvalues_only(g)), ref) < 1e-10);
    auto flux = plaquette_fluxes(g);
    REQUIRE(flux.size() == ref_flux.size());
    double worst = 0;
    for (std::size_t k = 0; k < flux.size(); ++k) worst = std::max(worst, angle_distance(flux[k].flux, ref_flux[k].flux));
    CHECK(worst < 1e-10);
  }
  CHECK(code_of([&] { gauge_transform(h, {0.1, 0.2}); }) == ErrorCode::size);
}

TEST_CASE("periodic boundary") {
  auto links = enumerate_links(cells(4, 4, Boundary::periodic), coupling(0.5, 0.0));
  CHECK(links.size() == 2 * 64);
  auto h = assemble(cells(4, 4, Boundary::periodic), coupling(0.5, 2 * pi * 3 / 8));
  CHECK(max_hermiticity_error(h.entries()) <= 1e-12);
  for (const auto& p : plaquette_fluxes(h)) CHECK(angle_distance(p.flux, 2 * pi * 3 / 8) < 1e-10);

  CHECK(code_of([] { assemble(cells(4, 4, Boundary::periodic), coupling(0.5, 0.3)); }) == ErrorCode::commensurability);
  CHECK(code_of([] { assemble(cells(1, 4, Boundary::periodic), coupling(0.5, 0.0)); }) != static_cast<ErrorCode>(0));
}

TEST_CASE("assembly rejects malformed link lists") {
  LatticeSpec s = cells(2, 2);
  auto links = enumerate_links(s, coupling(0.5, 0.0));
  auto dup = links;
  dup.push_back(links.front());
  CHECK(code_of([&] { build_hamiltonian(dup, s); }) == ErrorCode::assembly);

  auto self = links;
  self.push_back({links[0].from, links[0].from, 1.0, 0.0, LinkClass::intra});
  CHECK(code_of([&] { build_hamiltonian(self, s); }) == ErrorCode::assembly);

  auto far = links;
  far.push_back({SiteId{1, 1, Sublattice::A}, SiteId{2, 2, Sublattice::D}, 1.0, 0.0, LinkClass::intra});
  CHECK(code_of([&] { build_hamiltonian(far, s); }) == ErrorCode::assembly);

  CHECK(code_of([] { assemble(cells(0, 3), coupling(0.5, 0.0)); }) != static_cast<ErrorCode>(0));
  CHECK(code_of([] { assemble(cells(2, 2), coupling(-0.1, 0.0)); }) != static_cast<ErrorCode>(0));
}
