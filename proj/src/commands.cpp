#include "hoti/commands.hpp"

#include "hoti/device_map.hpp"
#include "hoti/error.hpp"
#include "hoti/format.hpp"
#include "hoti/svg.hpp"

#include "json.hpp"

#include <filesystem>
#include <numbers>

namespace hoti {

namespace {

using json = nlohmann::ordered_json;

const std::array<const char*, 4> kCornerKeys{"bottom_left", "top_left", "bottom_right", "top_right"};

json lattice_json(const RunConfig& cfg) {
  return {{"nx", cfg.lattice.nx},
          {"ny", cfg.lattice.ny},
          {"boundary", cfg.lattice.boundary == Boundary::open ? "open" : "periodic"}};
}

json coupling_json(const CouplingSpec& c) {
  json lam = json::array();
  for (double l : c.lambda) lam.push_back(round_sig(l));
  return {{"gamma", round_sig(c.gamma)},
          {"lambda", lam},
          {"phi", round_sig(c.phi)},
          {"flux_pattern", c.flux_pattern == FluxPattern::uniform ? "uniform" : "intracell-only"}};
}

json header(const char* kind, const RunConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["lattice"] = lattice_json(cfg);
  j["coupling"] = coupling_json(cfg.coupling);
  return j;
}

void ensure_parent(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw Error(ErrorCode::io, "cannot create directory '" + p.parent_path().string() + "': " + ec.message());
  }
}

std::string write(CommandResult& res, const std::string& stem, const char* ext, const std::string& contents) {
  std::string path = stem + ext;
  ensure_parent(path);
  write_text_file(path, contents);
  res.files.push_back(path);
  return path;
}

std::string n12(double v) {
  return format_number(v);
}

// Heat-map extent so that cell k of an axis is centred on its grid value.
std::pair<double, double> axis_extent(const GridAxis& a) {
  if (a.periodic) return {a.min, a.max};
  if (a.steps == 1) return {a.min - 0.5, a.min + 0.5};
  double h = (a.max - a.min) / (a.steps - 1);
  return {a.min - h / 2, a.max + h / 2};
}

json critical_json(const CriticalGammas& g) {
  auto opt = [](const std::optional<double>& v) -> json { return v ? json(round_sig(*v)) : json(nullptr); };
  json list = json::array();
  for (double v : g.list()) list.push_back(round_sig(v));
  return {{"critical_gamma", list},
          {"gamma_c1", opt(g.first_low)},
          {"gamma_c2", opt(g.complete_low)},
          {"gamma_c3", opt(g.first_high)},
          {"gamma_c4", opt(g.complete_high)}};
}

} // namespace

std::string output_stem(const std::string& command, const std::string& out, const std::string& out_dir) {
  if (!out.empty()) {
    std::filesystem::path p(out);
    auto ext = p.extension().string();
    if (ext == ".csv" || ext == ".json" || ext == ".svg") p.replace_extension();
    return p.string();
  }
  return (std::filesystem::path(out_dir.empty() ? "." : out_dir) / command).string();
}

std::vector<double> level_crossings(const std::vector<double>& x, const std::vector<double>& y, double level) {
  std::vector<double> out;
  for (std::size_t i = 1; i < x.size() && i < y.size(); ++i) {
    double a = y[i - 1] - level, b = y[i] - level;
    if ((a < 0 && b >= 0) || (a >= 0 && b < 0)) out.push_back(x[i - 1] + (x[i] - x[i - 1]) * a / (a - b));
  }
  return out;
}

CommandResult run_butterfly(const RunConfig& cfg, const std::string& stem) {
  validate(cfg);
  GridAxis axis{0.0, 2 * std::numbers::pi, cfg.scan.phi_steps, true};
  const auto phis = axis.values();
  auto slices = butterfly(phis, cfg.lattice, cfg.coupling, cfg.classifier, cfg.critical.workers);

  CommandResult res;
  CsvTable csv({"phi", "energy", "class"});
  FigureData fig;
  fig.category_names = {"bulk", "edge", "corner"};
  json per_phi = json::array();
  for (const auto& s : slices) {
    for (std::size_t k = 0; k < s.energies.size(); ++k) {
      csv.add_row({n12(s.phi), n12(s.energies[k]), mode_class_name(s.classes[k])});
      fig.points.push_back({s.phi, s.energies[k], static_cast<int>(s.classes[k])});
    }
    per_phi.push_back({{"phi", round_sig(s.phi)}, {"zecm_count", s.zecm_count}, {"zero_gap", round_sig(s.zero_gap)}});
  }
  write(res, stem, ".csv", csv.str());

  json j = header("butterfly", cfg);
  j["phi_steps"] = cfg.scan.phi_steps;
  j["rows"] = csv.rows();
  j["slices"] = std::move(per_phi);
  write(res, stem, ".json", j.dump(2) + "\n");

  FigureSpec fs{FigureKind::butterfly_scatter, "Spectrum vs flux, gamma = " + n12(cfg.coupling.gamma), "phi", "E"};
  write(res, stem, ".svg", render_figure(fs, fig));
  res.summary = json{{"command", "butterfly"}, {"rows", csv.rows()}, {"files", res.files}}.dump();
  return res;
}

CommandResult run_phase_map(const RunConfig& cfg, const std::string& stem) {
  validate(cfg);
  PhaseDiagram d = hoti_phase_map(cfg.scan.gamma_axis, cfg.scan.phi_axis, cfg.lattice, cfg.coupling, cfg.classifier,
                                  cfg.critical.workers);
  CommandResult res;
  CsvTable csv({"gamma", "phi", "zecm_count", "zero_gap", "edge_bandwidth", "phase"});
  const int r = d.axis1.steps, c = d.axis2.steps;
  FigureData fig;
  fig.grid.resize(r, c);
  fig.categorical = true;
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < c; ++k) {
      const auto& p = d.at(i, k);
      csv.add_row({n12(p.p1), n12(p.p2), std::to_string(p.zecm_count), n12(p.zero_gap), n12(p.edge_bandwidth),
                   p.nontrivial() ? "nontrivial" : "trivial"});
      fig.grid(i, k) = p.zecm_count;
    }
  }
  write(res, stem, ".csv", csv.str());

  json j = header("phase_map", cfg);
  j["gamma_range"] = {round_sig(d.axis1.min), round_sig(d.axis1.max), d.axis1.steps};
  j["phi_range"] = {round_sig(d.axis2.min), round_sig(d.axis2.max), d.axis2.steps};
  json lines = json::array();
  for (const auto& b : d.critical_lines) lines.push_back({{"phi", round_sig(b.p2)}, {"gamma", round_sig(b.p1)}});
  j["phase_boundary"] = std::move(lines);
  if (cfg.scan.critical) {
    CriticalGammas g = critical_gammas(cfg.lattice, cfg.coupling, cfg.classifier, cfg.critical);
    j["critical"] = critical_json(g);
    j["critical"]["indicator"] = indicator_name(cfg.critical.indicator);
    j["critical"]["resolution"] = round_sig(cfg.critical.resolution);
    j["critical_gamma"] = j["critical"]["critical_gamma"];
  }
  write(res, stem, ".json", j.dump(2) + "\n");

  std::tie(fig.x_min, fig.x_max) = axis_extent(d.axis2);
  std::tie(fig.y_min, fig.y_max) = axis_extent(d.axis1);
  FigureSpec fs{FigureKind::phase_heatmap, "Corner-mode count", "phi", "gamma"};
  write(res, stem, ".svg", render_figure(fs, fig));
  json summary{{"command", "phase-map"}, {"points", d.points.size()}, {"files", res.files}};
  if (j.contains("critical_gamma")) summary["critical_gamma"] = j["critical_gamma"];
  res.summary = summary.dump();
  return res;
}

CommandResult run_aniso_map(const RunConfig& cfg, const std::string& stem) {
  validate(cfg);
  CouplingSpec tmpl = cfg.coupling;
  tmpl.gamma = cfg.scan.aniso_gamma;
  tmpl.phi = cfg.scan.aniso_phi;
  tmpl.lambda[1] = cfg.scan.aniso_lambda2;
  tmpl.lambda[2] = cfg.scan.aniso_lambda3;
  PhaseDiagram d = anisotropy_map(cfg.scan.l1_axis, cfg.scan.l4_axis, cfg.lattice, tmpl, cfg.classifier,
                                  cfg.critical.workers);
  CommandResult res;
  CsvTable csv({"lambda1", "lambda4", "zecm_count", "zero_gap", "bottom_left", "top_left", "bottom_right", "top_right"});
  const int r = d.axis1.steps, c = d.axis2.steps;
  FigureData fig;
  fig.grid.resize(c, r);
  fig.categorical = true;
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < c; ++k) {
      const auto& p = d.at(i, k);
      std::vector<std::string> row{n12(p.p1), n12(p.p2), std::to_string(p.zecm_count), n12(p.zero_gap)};
      for (bool b : p.corner_signature) row.push_back(b ? "1" : "0");
      csv.add_row(std::move(row));
      fig.grid(k, i) = p.zecm_count;
    }
  }
  write(res, stem, ".csv", csv.str());

  json j = header("aniso_map", cfg);
  j["coupling"] = coupling_json(tmpl);
  j["lambda1_range"] = {round_sig(d.axis1.min), round_sig(d.axis1.max), d.axis1.steps};
  j["lambda4_range"] = {round_sig(d.axis2.min), round_sig(d.axis2.max), d.axis2.steps};
  json counts = json::object();
  for (int n : {0, 1, 2, 3, 4}) {
    int k = 0;
    for (const auto& p : d.points) k += p.zecm_count == n;
    if (k) counts[std::to_string(n)] = k;
  }
  j["zecm_count_histogram"] = std::move(counts);
  write(res, stem, ".json", j.dump(2) + "\n");

  std::tie(fig.x_min, fig.x_max) = axis_extent(d.axis1);
  std::tie(fig.y_min, fig.y_max) = axis_extent(d.axis2);
  FigureSpec fs{FigureKind::phase_heatmap, "Corner-mode count", "lambda1", "lambda4"};
  write(res, stem, ".svg", render_figure(fs, fig));
  res.summary = json{{"command", "aniso-map"}, {"points", d.points.size()}, {"files", res.files}}.dump();
  return res;
}

CommandResult run_steady(const RunConfig& cfg, const std::string& stem) {
  validate(cfg);
  PumpSpec pump = make_pump(cfg);
  SteadyStateField field = solve_steady_state(assemble(cfg.lattice, cfg.coupling), pump, {cfg.steady.kappa});
  CommandResult res;

  CsvTable csv({"x", "y", "site", "re", "im", "sspn"});
  json sites = json::array();
  for (int s = 0; s < cfg.lattice.dimension(); ++s) {
    SiteId id = site_at(s, cfg.lattice);
    auto a = field.amplitudes(s);
    csv.add_row({std::to_string(id.x()), std::to_string(id.y()), to_string(id), n12(a.real()), n12(a.imag()),
                 n12(field.sspn(s))});
    sites.push_back({{"site", to_string(id)},
                     {"x", id.x()},
                     {"y", id.y()},
                     {"re", round_sig(a.real())},
                     {"im", round_sig(a.imag())},
                     {"sspn", round_sig(field.sspn(s))}});
  }
  write(res, stem, ".csv", csv.str());

  json j = header("steady_state", cfg);
  j["kappa"] = round_sig(cfg.steady.kappa);
  j["detuning"] = round_sig(cfg.steady.detuning);
  j["pump"] = cfg.steady.pump;
  j["neighborhood"] = strategy_name(cfg.steady.neighborhood);
  j["residual"] = round_sig(field.residual, 3);
  json corners = json::object();
  if (cfg.lattice.boundary == Boundary::open) {
    auto lc = lattice_corners(cfg.lattice);
    for (int c = 0; c < 4; ++c) {
      auto nb = corner_neighborhood(lc[c], cfg.lattice, cfg.steady.neighborhood);
      auto rep = concentration_factor(field, lc[c], nb);
      corners[kCornerKeys[c]] = {{"site", to_string(lc[c])},
                                 {"R", round_sig(rep.r)},
                                 {"n_corner", round_sig(rep.n_corner)},
                                 {"n_patch", round_sig(rep.n_patch)},
                                 {"above_threshold", rep.r > cfg.steady.r_threshold}};
    }
  }
  j["corners"] = std::move(corners);
  j["sites"] = std::move(sites);
  write(res, stem, ".json", j.dump(2) + "\n");

  FigureData fig;
  fig.grid = sspn_map(field);
  fig.x_min = -0.5, fig.x_max = cfg.lattice.width() - 0.5;
  fig.y_min = -0.5, fig.y_max = cfg.lattice.height() - 0.5;
  FigureSpec fs{FigureKind::lattice_heatmap, "Steady-state photon number", "x", "y"};
  write(res, stem, ".svg", render_figure(fs, fig));
  res.summary = json{{"command", "steady"}, {"residual", round_sig(field.residual, 3)}, {"files", res.files}}.dump();
  return res;
}

CommandResult run_r_sweep(const RunConfig& cfg, const std::string& stem) {
  validate(cfg);
  GridAxis axis{0.0, 2 * std::numbers::pi, cfg.scan.phi_steps, true};
  const auto phis = axis.values();
  PumpSpec pump = make_pump(cfg);
  auto curve = r_vs_phi(phis, cfg.lattice, cfg.coupling, {cfg.steady.kappa}, pump, cfg.steady.neighborhood,
                        cfg.critical.workers);
  CommandResult res;
  CsvTable csv({"phi", "R_bottom_left", "R_top_left", "R_bottom_right", "R_top_right"});
  FigureData fig;
  fig.x = phis;
  for (int c = 0; c < 4; ++c) fig.series.push_back({kCornerKeys[c], {}});
  for (const auto& p : curve) {
    csv.add_row({n12(p.phi), n12(p.r[0]), n12(p.r[1]), n12(p.r[2]), n12(p.r[3])});
    for (int c = 0; c < 4; ++c) fig.series[c].y.push_back(p.r[c]);
  }
  write(res, stem, ".csv", csv.str());

  json j = header("r_sweep", cfg);
  j["kappa"] = round_sig(cfg.steady.kappa);
  j["phi_steps"] = cfg.scan.phi_steps;
  j["neighborhood"] = strategy_name(cfg.steady.neighborhood);
  j["threshold"] = round_sig(cfg.steady.r_threshold);
  json crossings = json::object();
  for (int c = 0; c < 4; ++c) {
    json list = json::array();
    for (double x : level_crossings(phis, fig.series[c].y, cfg.steady.r_threshold)) list.push_back(round_sig(x));
    crossings[kCornerKeys[c]] = std::move(list);
  }
  j["crossings"] = std::move(crossings);
  write(res, stem, ".json", j.dump(2) + "\n");

  fig.h_lines = {cfg.steady.r_threshold};
  fig.v_lines = {std::numbers::pi / 2, 3 * std::numbers::pi / 2};
  FigureSpec fs{FigureKind::r_curve, "Concentration factor, kappa = " + n12(cfg.steady.kappa), "phi", "R"};
  write(res, stem, ".svg", render_figure(fs, fig));
  res.summary = json{{"command", "r-sweep"}, {"rows", csv.rows()}, {"files", res.files}}.dump();
  return res;
}

CommandResult run_device_plan(const RunConfig& cfg, const std::string& stem) {
  validate(cfg);
  FrequencyPlan freq = assign_frequencies(cfg.lattice, cfg.device.omega0_ghz, cfg.device.delta_ghz);
  auto links = enumerate_links(cfg.lattice, cfg.coupling);
  ModulationPlan plan = tone_plan(links, freq, cfg.device.scale_mhz);
  ValidationReport report = validate_plan(plan, freq, cfg.device.guard_mhz);
  CommandResult res;

  CsvTable csv({"coupler_x", "coupler_y", "from", "to", "tone_ghz", "amplitude_mhz", "phase"});
  for (const auto& t : plan.tones)
    csv.add_row({std::to_string(t.coupler.x), std::to_string(t.coupler.y), to_string(t.from), to_string(t.to),
                 n12(t.tone_ghz), n12(t.amplitude_mhz), n12(t.phase)});
  write(res, stem, ".csv", csv.str());
  write(res, stem, ".json", device_plan_to_json(freq, plan, report) + "\n");
  res.summary = json{{"command", "device-plan"},
                     {"tones", plan.tones.size()},
                     {"violations", report.violations.size()},
                     {"files", res.files}}
                    .dump();
  return res;
}

CommandResult run_command(const std::string& command, const RunConfig& cfg, const std::string& stem) {
  if (command == "butterfly") return run_butterfly(cfg, stem);
  if (command == "phase-map") return run_phase_map(cfg, stem);
  if (command == "aniso-map") return run_aniso_map(cfg, stem);
  if (command == "steady") return run_steady(cfg, stem);
  if (command == "r-sweep") return run_r_sweep(cfg, stem);
  if (command == "device-plan") return run_device_plan(cfg, stem);
  throw Error(ErrorCode::invalid_argument, "unknown command '" + command + "'");
}

} // namespace hoti
