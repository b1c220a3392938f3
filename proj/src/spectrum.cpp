#include "hoti/spectrum.hpp"

#include "hoti/error.hpp"
#include "hoti/format.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hoti {

namespace {

struct SiteMasks {
  std::array<std::vector<int>, 4> patches;
  std::vector<char> in_corner;
  std::vector<char> in_boundary;
};

SiteMasks build_masks(const LatticeSpec& spec, const ClassifierThresholds& th) {
  const int n = spec.dimension();
  SiteMasks masks;
  masks.in_corner.assign(static_cast<std::size_t>(n), 0);
  masks.in_boundary.assign(static_cast<std::size_t>(n), 0);
  auto corners = lattice_corners(spec);
  for (int c = 0; c < 4; ++c) {
    masks.patches[c] = corner_patch_sites(corners[c], spec, th.corner_patch);
    for (int s : masks.patches[c]) masks.in_corner[static_cast<std::size_t>(s)] = 1;
  }
  for (int s = 0; s < n; ++s) {
    bool ring = in_boundary_ring(site_at(s, spec), spec, th.boundary_ring);
    masks.in_boundary[static_cast<std::size_t>(s)] = ring || masks.in_corner[static_cast<std::size_t>(s)];
  }
  return masks;
}

double masked_weight(const Eigen::VectorXcd& v, const std::vector<char>& mask) {
  double w = 0.0;
  for (Eigen::Index s = 0; s < v.size(); ++s)
    if (mask[static_cast<std::size_t>(s)]) w += std::norm(v(s));
  return w;
}

// Rotate the columns of `block` so that the weight operator restricted to
// their span is diagonal; columns come out in descending weight order.
Eigen::MatrixXcd rotate_by_weight(const Eigen::MatrixXcd& block, const std::vector<char>& mask) {
  if (block.cols() <= 1) return block;
  Eigen::MatrixXcd masked = block;
  for (Eigen::Index s = 0; s < block.rows(); ++s)
    if (!mask[static_cast<std::size_t>(s)]) masked.row(s).setZero();
  Eigen::MatrixXcd w = block.adjoint() * masked;
  w = 0.5 * (w + w.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(w);
  Eigen::MatrixXcd rotated = block * solver.eigenvectors();
  return rotated.rowwise().reverse().eval();
}

// Columns with equal corner weight can still mix different corners; inside
// each such group, diagonalize an operator that labels the corners apart.
Eigen::MatrixXcd separate_corners(Eigen::MatrixXcd v, const SiteMasks& masks, double tol) {
  const Eigen::Index m = v.cols();
  std::vector<double> w(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) w[static_cast<std::size_t>(j)] = masked_weight(v.col(j), masks.in_corner);
  Eigen::Index start = 0;
  while (start < m) {
    Eigen::Index end = start + 1;
    while (end < m && std::abs(w[static_cast<std::size_t>(end)] - w[static_cast<std::size_t>(end - 1)]) <= tol) ++end;
    const Eigen::Index g = end - start;
    if (g > 1) {
      Eigen::MatrixXcd group = v.middleCols(start, g);
      Eigen::MatrixXcd label = Eigen::MatrixXcd::Zero(g, g);
      for (int c = 0; c < 4; ++c)
        for (int s : masks.patches[c]) label += (c + 1.0) * group.row(s).adjoint() * group.row(s);
      label = 0.5 * (label + label.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(label);
      v.middleCols(start, g) = group * solver.eigenvectors();
    }
    start = end;
  }
  return v;
}

ModeInfo describe(const Eigen::VectorXcd& v, double energy, const SiteMasks& masks) {
  ModeInfo info;
  info.energy = energy;
  for (int c = 0; c < 4; ++c) {
    double w = 0.0;
    for (int s : masks.patches[c]) w += std::norm(v(s));
    info.corner_patch_weights[c] = w;
  }
  info.corner_weight = std::min(1.0, masked_weight(v, masks.in_corner));
  info.boundary_weight = std::min(1.0, masked_weight(v, masks.in_boundary));
  info.ipr = ipr(v);
  return info;
}

ModeClass edge_or_bulk(const ModeInfo& info, const ClassifierThresholds& th) {
  return info.boundary_weight >= th.edge_weight ? ModeClass::edge : ModeClass::bulk;
}

} // namespace

const char* mode_class_name(ModeClass c) {
  switch (c) {
  case ModeClass::bulk: return "bulk";
  case ModeClass::edge: return "edge";
  case ModeClass::corner: return "corner";
  }
  return "bulk";
}

void validate(const ClassifierThresholds& th) {
  if (!(th.zero_window > 0)) throw Error(ErrorCode::invalid_argument, "zero window must be > 0");
  if (!(th.corner_weight > 0 && th.corner_weight <= 1))
    throw Error(ErrorCode::invalid_argument, "corner weight threshold must lie in (0, 1]");
  if (!(th.edge_weight > 0 && th.edge_weight <= 1))
    throw Error(ErrorCode::invalid_argument, "edge weight threshold must lie in (0, 1]");
  if (th.corner_patch < 1) throw Error(ErrorCode::invalid_argument, "corner patch must be >= 1");
  if (th.boundary_ring < 1) throw Error(ErrorCode::invalid_argument, "boundary ring must be >= 1");
  if (!(th.degeneracy_tol >= 0)) throw Error(ErrorCode::invalid_argument, "degeneracy tolerance must be >= 0");
}

int ModeCatalog::count(ModeClass c) const {
  return static_cast<int>(std::count_if(modes.begin(), modes.end(), [c](const ModeInfo& m) { return m.mode_class == c; }));
}

EigenSystem diagonalize(const HamiltonianMatrix& h) {
  const auto& m = h.entries();
  double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  if (max_hermiticity_error(m) > 1e-12 * scale)
    throw Error(ErrorCode::numeric, "matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::numeric, "eigensolver did not converge");
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigenvalues_only(const HamiltonianMatrix& h) {
  const auto& m = h.entries();
  double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  if (max_hermiticity_error(m) > 1e-12 * scale)
    throw Error(ErrorCode::numeric, "matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::numeric, "eigensolver did not converge");
  return solver.eigenvalues();
}

std::vector<int> corner_patch_sites(const SiteId& corner, const LatticeSpec& spec, int patch) {
  if (!is_corner(corner, spec)) throw Error(ErrorCode::domain, to_string(corner) + " is not a lattice corner");
  std::vector<int> sites;
  const int cx = corner.x();
  const int cy = corner.y();
  for (int s = 0; s < spec.dimension(); ++s) {
    SiteId site = site_at(s, spec);
    if (std::abs(site.x() - cx) < patch && std::abs(site.y() - cy) < patch) sites.push_back(s);
  }
  return sites;
}

bool in_boundary_ring(const SiteId& site, const LatticeSpec& spec, int ring) {
  const int x = site.x();
  const int y = site.y();
  return x < ring || y < ring || x >= spec.width() - ring || y >= spec.height() - ring;
}

ModeCatalog classify_modes(const EigenSystem& es, const LatticeSpec& spec, const ClassifierThresholds& th) {
  validate(th);
  if (spec.boundary != Boundary::open)
    throw Error(ErrorCode::invalid_argument, "mode classification needs an open-boundary lattice");
  const int n = static_cast<int>(es.eigenvalues.size());
  if (n != spec.dimension() || es.eigenvectors.rows() != n || es.eigenvectors.cols() != n)
    throw Error(ErrorCode::size, "eigen system does not match the lattice");

  const SiteMasks masks = build_masks(spec, th);
  ModeCatalog cat;
  cat.spec = spec;
  cat.thresholds = th;
  cat.modes.resize(static_cast<std::size_t>(n));
  cat.vectors = es.eigenvectors;

  const double emax = n ? es.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const double deg_tol = th.degeneracy_tol * std::max(1.0, emax);

  int k = 0;
  while (k < n) {
    const double ek = es.eigenvalues(k);
    int end = k + 1;
    if (std::abs(ek) <= th.zero_window) {
      while (end < n && std::abs(es.eigenvalues(end)) <= th.zero_window) ++end;
    } else {
      while (end < n && std::abs(es.eigenvalues(end)) > th.zero_window &&
             es.eigenvalues(end) - es.eigenvalues(end - 1) <= deg_tol)
        ++end;
    }
    const int m = end - k;
    const Eigen::MatrixXcd block = es.eigenvectors.middleCols(k, m);

    if (std::abs(ek) > th.zero_window) {
      Eigen::MatrixXcd rotated = rotate_by_weight(block, masks.in_boundary);
      for (int j = 0; j < m; ++j) {
        ModeInfo info = describe(rotated.col(j), es.eigenvalues(k + j), masks);
        info.mode_class = edge_or_bulk(info, th);
        cat.modes[static_cast<std::size_t>(k + j)] = info;
        cat.vectors.col(k + j) = rotated.col(j);
      }
      k = end;
      continue;
    }

    // Zero-energy window: corner weights first, then boundary weights on the rest.
    Eigen::MatrixXcd by_corner = separate_corners(rotate_by_weight(block, masks.in_corner), masks, 1e-9);
    int n_corner = 0;
    while (n_corner < m && masked_weight(by_corner.col(n_corner), masks.in_corner) >= th.corner_weight) ++n_corner;
    Eigen::MatrixXcd rest = rotate_by_weight(by_corner.rightCols(m - n_corner), masks.in_boundary);

    // Corner vectors take the eigenvalues of smallest |E|, the others follow
    // in order of their energy expectation value.
    std::vector<int> positions(static_cast<std::size_t>(m));
    std::iota(positions.begin(), positions.end(), k);
    std::stable_sort(positions.begin(), positions.end(), [&](int a, int b) {
      return std::abs(es.eigenvalues(a)) < std::abs(es.eigenvalues(b));
    });
    std::vector<int> corner_pos(positions.begin(), positions.begin() + n_corner);
    std::vector<int> other_pos(positions.begin() + n_corner, positions.end());
    std::sort(corner_pos.begin(), corner_pos.end());
    std::sort(other_pos.begin(), other_pos.end());

    for (int j = 0; j < n_corner; ++j) {
      int pos = corner_pos[static_cast<std::size_t>(j)];
      ModeInfo info = describe(by_corner.col(j), es.eigenvalues(pos), masks);
      info.mode_class = ModeClass::corner;
      cat.modes[static_cast<std::size_t>(pos)] = info;
      cat.vectors.col(pos) = by_corner.col(j);
    }

    const Eigen::VectorXd hdiag = es.eigenvalues.segment(k, m);
    const Eigen::MatrixXcd coeff = block.adjoint() * rest;
    std::vector<std::pair<double, int>> order;
    for (int j = 0; j < rest.cols(); ++j) {
      double expectation = coeff.col(j).cwiseAbs2().dot(hdiag);
      order.emplace_back(expectation, j);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t j = 0; j < order.size(); ++j) {
      int pos = other_pos[j];
      ModeInfo info = describe(rest.col(order[j].second), es.eigenvalues(pos), masks);
      info.mode_class = edge_or_bulk(info, th);
      cat.modes[static_cast<std::size_t>(pos)] = info;
      cat.vectors.col(pos) = rest.col(order[j].second);
    }
    k = end;
  }
  return cat;
}

double zero_gap(const Eigen::VectorXd& sorted_eigenvalues) {
  if (sorted_eigenvalues.size() < 5) throw Error(ErrorCode::size, "zero_gap needs at least 5 modes");
  std::vector<double> a(static_cast<std::size_t>(sorted_eigenvalues.size()));
  for (Eigen::Index i = 0; i < sorted_eigenvalues.size(); ++i) a[static_cast<std::size_t>(i)] = std::abs(sorted_eigenvalues(i));
  std::nth_element(a.begin(), a.begin() + 4, a.end());
  return a[4];
}

double zero_gap(const EigenSystem& es) {
  return zero_gap(es.eigenvalues);
}

int count_zecm(const ModeCatalog& cat) {
  return cat.count(ModeClass::corner);
}

double ipr(const Eigen::VectorXcd& v) {
  double norm2 = v.squaredNorm();
  if (!(norm2 > 0)) throw Error(ErrorCode::invalid_argument, "ipr of a zero vector");
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::norm(v(i)), 2);
  return s / (norm2 * norm2);
}

std::array<double, 4> corner_occupation(const ModeCatalog& cat) {
  std::array<double, 4> occ{};
  for (const auto& m : cat.modes)
    if (m.mode_class == ModeClass::corner)
      for (int c = 0; c < 4; ++c) occ[c] += m.corner_patch_weights[c];
  return occ;
}

std::array<bool, 4> corner_signature(const ModeCatalog& cat) {
  auto occ = corner_occupation(cat);
  std::array<bool, 4> sig{};
  for (int c = 0; c < 4; ++c) sig[c] = occ[c] >= cat.thresholds.corner_weight;
  return sig;
}

double edge_bandwidth(const ModeCatalog& cat) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const auto& m : cat.modes) {
    if (m.mode_class != ModeClass::edge || m.energy < 0) continue;
    if (!any) lo = hi = m.energy;
    lo = std::min(lo, m.energy);
    hi = std::max(hi, m.energy);
    any = true;
  }
  return any ? hi - lo : 0.0;
}

std::string catalog_to_json(const ModeCatalog& cat, int indent) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "mode_catalog";
  j["lattice"] = {{"nx", cat.spec.nx}, {"ny", cat.spec.ny}};
  j["thresholds"] = {{"zero_window", round_sig(cat.thresholds.zero_window)},
                     {"corner_weight", round_sig(cat.thresholds.corner_weight)},
                     {"edge_weight", round_sig(cat.thresholds.edge_weight)},
                     {"corner_patch", cat.thresholds.corner_patch},
                     {"boundary_ring", cat.thresholds.boundary_ring}};
  j["counts"] = {{"bulk", cat.count(ModeClass::bulk)},
                 {"edge", cat.count(ModeClass::edge)},
                 {"corner", cat.count(ModeClass::corner)}};
  auto modes = nlohmann::ordered_json::array();
  for (const auto& m : cat.modes) {
    modes.push_back({{"energy", round_sig(m.energy)},
                     {"class", mode_class_name(m.mode_class)},
                     {"corner_weight", round_sig(m.corner_weight)},
                     {"boundary_weight", round_sig(m.boundary_weight)},
                     {"ipr", round_sig(m.ipr)}});
  }
  j["modes"] = std::move(modes);
  return j.dump(indent);
}

} // namespace hoti
