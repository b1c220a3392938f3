#include "hotisim/hotisim.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace {

struct ConfigDeleter {
  void operator()(hoti_config* c) const { hoti_config_free(c); }
};
using ConfigPtr = std::unique_ptr<hoti_config, ConfigDeleter>;

int report_error(const std::string& code, int status, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = {{"code", code}, {"status", status}, {"message", message}};
  std::cerr << j.dump() << '\n';
  return status == 0 ? 1 : status;
}

int report_status(hoti_status s) {
  return report_error(hoti_status_name(s), static_cast<int>(s), hoti_last_error());
}

// Each command-line flag is kept as text and forwarded to the config key of
// the same meaning, so expressions such as 2pi/3 work on the command line.
struct Override {
  std::string key;
  std::string value;
  bool set = false;
};

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::string config_path;
  std::string out;
  std::string out_dir;
  std::vector<std::string> assignments;
  std::vector<std::unique_ptr<Override>> overrides;

  void flag(const std::string& option, const std::string& key, const std::string& help) {
    auto o = std::make_unique<Override>();
    o->key = key;
    app->add_option(option, o->value, help)->each([p = o.get()](const std::string&) { p->set = true; });
    overrides.push_back(std::move(o));
  }
};

void add_lattice_flags(Command& c) {
  c.flag("--nx", "nx", "unit cells along x");
  c.flag("--ny", "ny", "unit cells along y");
  c.flag("--boundary", "boundary", "open or periodic");
  c.flag("--gamma", "gamma", "intra-cell hopping");
  c.flag("--lambda", "lambda", "inter-cell hoppings l1,l2,l3,l4");
  c.flag("--phi", "phi", "flux per plaquette, e.g. 2pi/3");
  c.flag("--flux-pattern", "flux_pattern", "uniform or intracell-only");
}

void add_steady_flags(Command& c) {
  c.flag("--kappa", "kappa", "uniform loss rate");
  c.flag("--pump", "pump", "corners or site:<x>,<y>,<S>[;...]");
  c.flag("--detuning", "detuning", "pump detuning from the bare resonance");
  c.flag("--neighborhood", "neighborhood", "nearest6, manhattan2 or patch3x3");
}

int run(Command& c) {
  hoti_config* raw = nullptr;
  hoti_status s = c.config_path.empty() ? hoti_config_new(&raw) : hoti_config_load(c.config_path.c_str(), &raw);
  if (s != HOTI_OK) return report_status(s);
  ConfigPtr cfg(raw);

  for (const auto& o : c.overrides) {
    if (!o->set) continue;
    if ((s = hoti_config_set(cfg.get(), o->key.c_str(), o->value.c_str())) != HOTI_OK) return report_status(s);
  }
  for (const auto& a : c.assignments) {
    auto eq = a.find('=');
    if (eq == std::string::npos) return report_error("invalid_argument", 1, "--set expects key=value, got '" + a + "'");
    auto key = CLI::detail::trim_copy(a.substr(0, eq));
    auto value = CLI::detail::trim_copy(a.substr(eq + 1));
    if ((s = hoti_config_set(cfg.get(), key.c_str(), value.c_str())) != HOTI_OK) return report_status(s);
  }
  if (!c.out_dir.empty() && (s = hoti_config_set(cfg.get(), "out_dir", c.out_dir.c_str())) != HOTI_OK)
    return report_status(s);

  hoti_result* result = nullptr;
  if ((s = hoti_run(c.name.c_str(), cfg.get(), c.out.c_str(), &result)) != HOTI_OK) return report_status(s);
  std::unique_ptr<hoti_result, decltype(&hoti_result_free)> guard(result, hoti_result_free);
  size_t needed = 0;
  hoti_result_summary(result, nullptr, 0, &needed);
  std::string summary(needed, '\0');
  if ((s = hoti_result_summary(result, summary.data(), summary.size(), &needed)) != HOTI_OK) return report_status(s);
  summary.resize(needed - 1);
  std::cout << summary << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D SSH lattice simulator: spectra, phase maps, steady states and device plans", "hotisim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hoti_version()));

  const std::vector<std::pair<std::string, std::string>> names{
      {"butterfly", "open-boundary spectrum versus flux, colored by mode class"},
      {"phase-map", "ZECM count over a (gamma, phi) grid and critical gamma values"},
      {"aniso-map", "ZECM count over a (lambda1, lambda4) grid"},
      {"steady", "driven-dissipative steady state and per-corner concentration"},
      {"r-sweep", "per-corner concentration factor versus flux"},
      {"device-plan", "site frequencies and coupler modulation tones"},
  };

  std::vector<std::unique_ptr<Command>> commands;
  for (const auto& [name, help] : names) {
    auto c = std::make_unique<Command>();
    c->name = name;
    c->app = app.add_subcommand(name, help);
    c->app->add_option("--config", c->config_path, "key = value configuration file")->check(CLI::ExistingFile);
    c->app->add_option("--out", c->out, "output path; .csv/.json/.svg share its stem");
    c->app->add_option("--out-dir", c->out_dir, "directory for <command>.csv/.json/.svg");
    c->app->add_option("--set", c->assignments, "override any config key, key=value (repeatable)");
    c->flag("--workers", "workers", "worker threads for scans");
    commands.push_back(std::move(c));
  }

  Command& butterfly = *commands[0];
  add_lattice_flags(butterfly);
  butterfly.flag("--phi-steps", "scan.phi_steps", "flux samples over [0, 2pi)");

  Command& phase = *commands[1];
  add_lattice_flags(phase);
  phase.flag("--gamma-range", "scan.gamma_range", "a:b:n");
  phase.flag("--phi-range", "scan.phi_range", "a:b:n (b excluded)");
  phase.flag("--critical", "scan.critical", "extract critical gamma values (true/false)");

  Command& aniso = *commands[2];
  add_lattice_flags(aniso);
  aniso.flag("--l1-range", "scan.l1_range", "a:b:n");
  aniso.flag("--l4-range", "scan.l4_range", "a:b:n");

  Command& steady = *commands[3];
  add_lattice_flags(steady);
  add_steady_flags(steady);

  Command& sweep = *commands[4];
  add_lattice_flags(sweep);
  add_steady_flags(sweep);
  sweep.flag("--phi-steps", "scan.phi_steps", "flux samples over [0, 2pi)");
  sweep.flag("--r-threshold", "r_threshold", "reference level for crossings");

  Command& device = *commands[5];
  add_lattice_flags(device);
  device.flag("--omega0-ghz", "device.omega0_ghz", "base resonator frequency");
  device.flag("--delta-ghz", "device.delta_ghz", "frequency step between sublattices");
  device.flag("--scale-mhz", "device.scale_mhz", "modulation amplitude per unit hopping");
  device.flag("--guard-mhz", "device.guard_mhz", "minimum tone separation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", 64, e.what());
  }

  for (auto& c : commands)
    if (c->app->parsed()) return run(*c);
  return report_error("usage", 64, "no command given");
}
