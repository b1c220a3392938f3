// Acceptance gate. Usage: acceptance <1..7|all>
// Prints one line per sub-check and one PASS/FAIL line per criterion.

#include "hoti/device_map.hpp"
#include "hoti/lattice.hpp"
#include "hoti/phase_scan.hpp"
#include "hoti/spectrum.hpp"
#include "hoti/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

using namespace hoti;

namespace {

constexpr double pi = std::numbers::pi;

class Criterion {
public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void check(bool ok, const std::string& what) {
    std::printf("  %s  c%d.%d %s\n", ok ? "ok  " : "FAIL", id_, ++n_, what.c_str());
    pass_ &= ok;
  }

  bool finish() const {
    std::printf("%s criterion %d: %s\n", pass_ ? "PASS" : "FAIL", id_, title_.c_str());
    std::fflush(stdout);
    return pass_;
  }

private:
  int id_;
  std::string title_;
  int n_ = 0;
  bool pass_ = true;
};

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

LatticeSpec desk() { return LatticeSpec{8, 8, Boundary::open}; }

CouplingSpec coupling(double gamma, double phi, std::array<double, 4> lambda = {1, 1, 1, 1}) {
  CouplingSpec c;
  c.gamma = gamma;
  c.phi = phi;
  c.lambda = lambda;
  return c;
}

ModeCatalog catalog(const CouplingSpec& c, ClassifierThresholds th = {}) {
  return classify_modes(diagonalize(assemble(desk(), c)), desk(), th);
}

int count_within(const Eigen::VectorXd& e, double value, double tol) {
  int n = 0;
  for (Eigen::Index k = 0; k < e.size(); ++k) n += std::abs(e(k) - value) <= tol;
  return n;
}

std::vector<double> sorted_values(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2 * pi);
  return std::min(d, 2 * pi - d);
}

bool criterion1() {
  Criterion c(1, "critical gammas within 0.02 of 0.41, 0.45, 0.76, 0.90");
  CriticalOptions opt;
  opt.workers = workers();
  auto r = critical_gammas(desk(), coupling(0.5, 0.0), {}, opt);
  const std::optional<double> got[4] = {r.first_low, r.complete_low, r.first_high, r.complete_high};
  const double want[4] = {0.41, 0.45, 0.76, 0.90};
  for (int k = 0; k < 4; ++k) {
    if (!got[k]) {
      c.check(false, "gamma_c" + std::to_string(k + 1) + " not found");
      continue;
    }
    c.check(std::abs(*got[k] - want[k]) <= 0.02,
            "gamma_c" + std::to_string(k + 1) + fmt(" = %.4f (target %.2f)", *got[k], want[k]));
  }
  return c.finish();
}

bool criterion2() {
  Criterion c(2, "exact structure of the fully dimerized lattice");
  // Flux values away from 0, 2pi/3 and 4pi/3, where the inter-cell rings add
  // extra levels at 0 or +-1.
  std::vector<double> grid;
  for (int k = 0; k < 24; ++k) {
    double phi = 2 * pi * (k + 0.5) / 24;
    grid.push_back(phi);
  }
  grid.push_back(pi);
  grid.push_back(pi / 2);
  bool counts = true, local = true;
  for (double phi : grid) {
    auto cat = catalog(coupling(0.0, phi));
    Eigen::VectorXd e(static_cast<Eigen::Index>(cat.modes.size()));
    for (std::size_t k = 0; k < cat.modes.size(); ++k) e(static_cast<Eigen::Index>(k)) = cat.modes[k].energy;
    counts &= count_within(e, 0.0, 1e-10) == 4 && count_within(e, 1.0, 1e-10) == 28 &&
              count_within(e, -1.0, 1e-10) == 28;
    int corners = 0;
    for (const auto& m : cat.modes)
      if (std::abs(m.energy) <= 1e-10) {
        corners += m.mode_class == ModeClass::corner;
        local &= std::abs(m.ipr - 1.0) <= 1e-10 && std::abs(m.corner_weight - 1.0) <= 1e-10;
      }
    local &= corners == 4;
  }
  c.check(counts, "4 zero modes and 28-fold levels at +1 and -1 on " + std::to_string(grid.size()) + " flux values");
  c.check(local, "each zero mode sits on a single corner site");

  auto cat0 = catalog(coupling(0.0, 0.0));
  int corner = 0, plus = 0, minus = 0;
  for (const auto& m : cat0.modes) {
    corner += m.mode_class == ModeClass::corner && std::abs(m.energy) <= 1e-10 && std::abs(m.ipr - 1) <= 1e-10;
    plus += m.mode_class == ModeClass::edge && std::abs(m.energy - 1) <= 1e-10;
    minus += m.mode_class == ModeClass::edge && std::abs(m.energy + 1) <= 1e-10;
  }
  c.check(corner == 4 && plus == 28 && minus == 28, "phi = 0: 4 corner modes, 28 edge modes at each of +1 and -1");
  return c.finish();
}

bool criterion3() {
  Criterion c(3, "corner mode discrimination at gamma = 0.5");
  for (double eps : {0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08}) {
    ClassifierThresholds th;
    th.zero_window = eps;
    int topo = count_zecm(catalog(coupling(0.5, 2 * pi / 3), th));
    int triv = count_zecm(catalog(coupling(0.5, 2 * pi / 10), th));
    c.check(topo == 4 && triv == 0, fmt("eps %.2f: ", eps) + std::to_string(topo) + " at 2pi/3, " +
                                         std::to_string(triv) + " at 2pi/10");
  }
  return c.finish();
}

std::vector<double> crossings(const std::vector<double>& grid, const std::vector<double>& r, double threshold) {
  std::vector<double> out;
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    double a = r[i] - threshold, b = r[j] - threshold;
    if ((a < 0) == (b < 0)) continue;
    double pj = j == 0 ? 2 * pi : grid[j];
    out.push_back(grid[i] + (pj - grid[i]) * a / (a - b));
  }
  return out;
}

bool criterion4() {
  Criterion c(4, "R jump at the transition points");
  const int n = 128;
  const double cell = 2 * pi / n;
  std::vector<double> grid;
  for (int k = 0; k < n; ++k) grid.push_back(cell * k);
  const LatticeSpec s = desk();

  for (auto strategy : {NeighborhoodStrategy::nearest6, NeighborhoodStrategy::manhattan2, NeighborhoodStrategy::patch3x3}) {
    std::vector<double> ref_cross;
    for (double kappa : {0.03, 0.01, 0.005}) {
      auto pts = r_vs_phi(grid, s, coupling(0.5, 0.0), {kappa}, four_corner_pump(s), strategy, workers());
      std::vector<double> r;
      for (const auto& p : pts) r.push_back((p.r[0] + p.r[1] + p.r[2] + p.r[3]) / 4);
      std::string tag = std::string(strategy_name(strategy)) + fmt(" kappa %.3f: ", kappa);

      double min_in = 1e9, max_out = -1e9;
      for (int k = 0; k < n; ++k) {
        if (grid[k] > pi / 2 && grid[k] < 3 * pi / 2) min_in = std::min(min_in, r[k]);
        if (grid[k] > 0 && grid[k] < pi / 2) max_out = std::max(max_out, r[k]);
      }
      auto x = crossings(grid, r, 0.7);
      bool placed = x.size() == 2 && std::abs(x[0] - pi / 2) <= cell && std::abs(x[1] - 3 * pi / 2) <= cell;
      c.check(x.size() == 2, tag + std::to_string(x.size()) + " crossings of 0.7");
      c.check(placed, tag + "crossings within one grid cell of pi/2 and 3pi/2");
      c.check(min_in > 0.7, tag + fmt("min R over (pi/2, 3pi/2) = %.4f", min_in));
      c.check(max_out < 0.7, tag + fmt("max R over (0, pi/2) = %.4f", max_out));
      if (kappa == 0.03) {
        ref_cross = x;
      } else {
        bool steady = x.size() == ref_cross.size() && !x.empty();
        for (std::size_t i = 0; steady && i < x.size(); ++i) steady = std::abs(x[i] - ref_cross[i]) < cell;
        c.check(steady, tag + "crossings shifted by less than one grid cell from kappa 0.03");
      }
    }
  }
  return c.finish();
}

std::set<int> top_sites(const SteadyStateField& f, int k) {
  std::vector<int> order(static_cast<std::size_t>(f.sspn.size()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f.sspn(a) > f.sspn(b); });
  return {order.begin(), order.begin() + k};
}

bool criterion5() {
  Criterion c(5, "anisotropic corner mode map");
  const LatticeSpec s = desk();
  const auto corners = lattice_corners(s);
  // corner order: bottom-left, top-left, bottom-right, top-right
  struct Case {
    double l1, l4;
    int count;
    std::vector<int> where;
    const char* name;
  };
  const Case cases[] = {
      {3, 3, 4, {0, 1, 2, 3}, "all corners"},
      {3, 0.5, 2, {0, 2}, "bottom pair"},
      {0.5, 3, 2, {0, 1}, "left pair"},
      {0.5, 0.5, 0, {}, "none"},
  };
  for (const auto& k : cases) {
    auto cpl = coupling(1.0, pi, {k.l1, 3, 3, k.l4});
    auto h = assemble(s, cpl);
    auto cat = classify_modes(diagonalize(h), s, {});
    int n = count_zecm(cat);
    std::string tag = fmt("(%.1f, %.1f): ", k.l1, k.l4);
    c.check(n == k.count, tag + std::to_string(n) + " corner modes, expected " + std::to_string(k.count));
    if (k.count == 0) continue;

    auto sig = corner_signature(cat);
    std::set<int> lit, want(k.where.begin(), k.where.end());
    for (int i = 0; i < 4; ++i)
      if (sig[static_cast<std::size_t>(i)]) lit.insert(i);
    std::string names;
    for (int i : lit) names += " " + to_string(corners[static_cast<std::size_t>(i)]);
    c.check(lit == want, tag + "modes on the " + k.name + " (found:" + names + ")");

    auto f = solve_steady_state(h, four_corner_pump(s), {0.03});
    std::set<int> want_sites;
    for (int i : k.where) want_sites.insert(site_index(corners[static_cast<std::size_t>(i)], s));
    c.check(top_sites(f, k.count) == want_sites, tag + "top " + std::to_string(k.count) + " SSPN sites are the " + k.name);
  }
  return c.finish();
}

std::vector<double> random_phases(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2 * pi);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = u(rng);
  return out;
}

bool criterion6() {
  Criterion c(6, "property suite");
  const LatticeSpec s = desk();
  std::vector<CouplingSpec> points;
  for (double phi : {0.0, 0.7, pi / 2, 2 * pi / 3, pi, 4.9})
    for (double gamma : {0.0, 0.3, 0.5, 0.9}) points.push_back(coupling(gamma, phi, {1, 1.3, 0.8, 1.1}));

  double herm = 0, chiral = 0, gauge = 0, flux = 0, mirror = 0;
  for (const auto& cpl : points) {
    auto h = assemble(s, cpl);
    herm = std::max(herm, max_hermiticity_error(h.entries()));
    auto e = sorted_values(eigenvalues_only(h));
    for (std::size_t k = 0; k < e.size(); ++k) chiral = std::max(chiral, std::abs(e[k] + e[e.size() - 1 - k]));
    auto g = gauge_transform(h, random_phases(h.dimension(), 7));
    gauge = std::max(gauge, max_diff(sorted_values(eigenvalues_only(g)), e));
    CouplingSpec m = cpl;
    m.phi = 2 * pi - cpl.phi;
    mirror = std::max(mirror, max_diff(sorted_values(eigenvalues_only(assemble(s, m))), e));
    if (cpl.gamma > 0)
      for (const auto& p : plaquette_fluxes(h)) flux = std::max(flux, angle_gap(p.flux, cpl.phi));
  }
  c.check(herm == 0.0, fmt("Hermiticity error %.1e", herm));
  c.check(chiral <= 1e-10, fmt("chiral pairing error %.1e", chiral));
  c.check(gauge <= 1e-10, fmt("gauge invariance of sorted spectra %.1e", gauge));
  c.check(flux <= 1e-10, fmt("plaquette flux error %.1e", flux));
  c.check(mirror <= 1e-10, fmt("phi -> 2pi - phi spectral mirror %.1e", mirror));

  std::vector<double> grid{0.4, 1.3, 2 * pi / 3, 2.7}, mgrid;
  for (double p : grid) mgrid.push_back(2 * pi - p);
  auto a = r_vs_phi(grid, s, coupling(0.5, 0.0), {0.03}, four_corner_pump(s), NeighborhoodStrategy::nearest6, workers());
  auto b = r_vs_phi(mgrid, s, coupling(0.5, 0.0), {0.03}, four_corner_pump(s), NeighborhoodStrategy::nearest6, workers());
  const int swap[4] = {1, 0, 3, 2};
  double rmirror = 0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (int k = 0; k < 4; ++k) rmirror = std::max(rmirror, std::abs(a[i].r[k] - b[i].r[swap[k]]));
  c.check(rmirror <= 1e-8, fmt("R-curve mirror with top and bottom corners exchanged %.1e", rmirror));

  auto h = assemble(s, coupling(0.5, 2 * pi / 3));
  auto pump = four_corner_pump(s);
  auto f = solve_steady_state(h, pump, {0.03});
  c.check(f.residual <= 1e-10, fmt("steady-state relative residual %.1e", f.residual));
  PumpSpec scaled = pump;
  for (auto& d : scaled.drives) d.second *= std::complex<double>(3.0, -2.0);
  auto g = solve_steady_state(h, scaled, {0.03});
  auto r1 = corner_ratios(f, NeighborhoodStrategy::nearest6);
  auto r2 = corner_ratios(g, NeighborhoodStrategy::nearest6);
  double rs = 0;
  for (int k = 0; k < 4; ++k) rs = std::max(rs, std::abs(r1[k] - r2[k]));
  c.check(rs <= 1e-12, fmt("pump scaling changes R by %.1e", rs));

  double two_site = 0;
  for (double kappa : {0.03, 0.5, 2.0, 6.0}) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 1) = m(1, 0) = 1.0;
    HamiltonianMatrix dimer(LatticeSpec{1, 1, Boundary::open}, m);
    auto d = solve_steady_state(dimer, single_site_pump({1, 1, Sublattice::A}), {kappa});
    double q = kappa * kappa / 4;
    double r = concentration_factor(d, {1, 1, Sublattice::A}, {{1, 1, Sublattice::A}, {1, 1, Sublattice::B}}).r;
    two_site = std::max(two_site, std::abs(r - q / (1 + q)));
  }
  c.check(two_site <= 1e-12, fmt("two-site closed form error %.1e", two_site));

  auto links = enumerate_links(s, coupling(0.5, 2 * pi / 3));
  auto freq = assign_frequencies(s, 8.0, 0.7);
  auto plan = tone_plan(links, freq, 10.0);
  double rt = (build_hamiltonian(links_from_plan(plan), s).entries() - h.entries()).cwiseAbs().maxCoeff();
  c.check(rt <= 1e-12, fmt("device-plan round trip error %.1e", rt));
  std::set<long> tones;
  for (const auto& t : plan.tones) tones.insert(std::lround(t.tone_ghz / freq.delta_ghz * 1e6));
  c.check(tones == std::set<long>{1000000, 2000000, 4000000} && validate_plan(plan, freq).ok(),
          "tone set is {D, 2D, 4D} and the plan validates");
  return c.finish();
}

bool criterion7() {
  Criterion c(7, "single-mode limit");
  const LatticeSpec s = desk();
  auto h = assemble(s, coupling(0.5, 2 * pi / 3));
  auto cat = classify_modes(diagonalize(h), s, {});
  std::vector<Eigen::VectorXd> profiles;
  for (std::size_t k = 0; k < cat.modes.size(); ++k)
    if (cat.modes[k].mode_class == ModeClass::corner)
      profiles.push_back(cat.vectors.col(static_cast<Eigen::Index>(k)).cwiseAbs2());
  c.check(profiles.size() == 4, std::to_string(profiles.size()) + " corner mode profiles");
  if (profiles.empty()) return c.finish();

  Eigen::MatrixXd basis(s.dimension(), static_cast<Eigen::Index>(profiles.size()));
  for (std::size_t k = 0; k < profiles.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = profiles[k];
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(basis.rows(), basis.cols());

  auto f = solve_steady_state(h, four_corner_pump(s), {1e-4});
  Eigen::VectorXd n = f.sspn / f.sspn.norm();
  double proj = (q.transpose() * n).norm();
  c.check(proj >= 0.99, fmt("projection onto corner intensity profiles %.6f", proj));
  return c.finish();
}

} // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::function<bool()>> criteria{
      {"1", criterion1}, {"2", criterion2}, {"3", criterion3}, {"4", criterion4},
      {"5", criterion5}, {"6", criterion6}, {"7", criterion7},
  };
  std::string which = argc > 1 ? argv[1] : "all";
  if (which != "all" && !criteria.count(which)) {
    std::fprintf(stderr, "usage: %s <1..7|all>\n", argv[0]);
    return 64;
  }
  bool ok = true;
  for (const auto& [id, run] : criteria)
    if (which == "all" || which == id) ok &= run();
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
