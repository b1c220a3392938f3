#include "hoti/config.hpp"

#include "hoti/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace hoti {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class ExpressionParser {
public:
  explicit ExpressionParser(const std::string& s) : s_(s) {}

  double parse() {
    skip();
    double v = product();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
    if (!std::isfinite(v)) fail("value is not finite");
    return v;
  }

private:
  double product() {
    double v = signed_factor();
    for (;;) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
        char op = s_[pos_++];
        double rhs = signed_factor();
        if (op == '*') v *= rhs;
        else {
          if (rhs == 0.0) fail("division by zero");
          v /= rhs;
        }
      } else {
        return v;
      }
    }
  }

  double signed_factor() {
    skip();
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      bool neg = s_[pos_++] == '-';
      double v = signed_factor();
      return neg ? -v : v;
    }
    return factor();
  }

  double factor() {
    skip();
    double v = 1.0;
    bool have_number = false;
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      have_number = true;
    }
    skip();
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return v * std::numbers::pi;
    }
    if (!have_number) fail(pos_ < s_.size() ? "unexpected '" + s_.substr(pos_) + "'" : "missing value");
    return v;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::parse, "cannot evaluate '" + s_ + "': " + why);
  }

  std::string s_;
  std::size_t pos_ = 0;
};

int parse_int(const std::string& v) {
  std::size_t used = 0;
  long long r = 0;
  try {
    r = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse, "expected an integer, got '" + v + "'");
  }
  if (used != v.size()) throw Error(ErrorCode::parse, "expected an integer, got '" + v + "'");
  if (r < -1000000000LL || r > 1000000000LL) throw Error(ErrorCode::parse, "integer out of range: " + v);
  return static_cast<int>(r);
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw Error(ErrorCode::parse, "expected a boolean, got '" + v + "'");
}

GridAxis parse_axis(const std::string& v, bool periodic) {
  auto parts = split(v, ':');
  if (parts.size() != 3) throw Error(ErrorCode::parse, "expected a range a:b:n, got '" + v + "'");
  GridAxis a{parse_expression(parts[0]), parse_expression(parts[1]), parse_int(parts[2]), periodic};
  validate(a);
  return a;
}

std::string axis_text(const GridAxis& a) {
  return exact(a.min) + ":" + exact(a.max) + ":" + std::to_string(a.steps);
}

struct KeyHandler {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<KeyHandler>& handlers() {
  static const std::vector<KeyHandler> table = [] {
    std::vector<KeyHandler> t;
    auto real = [&t](const std::string& key, auto accessor) {
      t.push_back({key, [accessor](RunConfig& c, const std::string& v) { accessor(c) = parse_expression(v); },
                   [accessor](const RunConfig& c) { return exact(accessor(const_cast<RunConfig&>(c))); }});
    };
    auto integer = [&t](const std::string& key, auto accessor) {
      t.push_back({key, [accessor](RunConfig& c, const std::string& v) { accessor(c) = parse_int(v); },
                   [accessor](const RunConfig& c) { return std::to_string(accessor(const_cast<RunConfig&>(c))); }});
    };

    integer("nx", [](RunConfig& c) -> int& { return c.lattice.nx; });
    integer("ny", [](RunConfig& c) -> int& { return c.lattice.ny; });
    t.push_back({"boundary",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "open") c.lattice.boundary = Boundary::open;
                   else if (v == "periodic") c.lattice.boundary = Boundary::periodic;
                   else throw Error(ErrorCode::parse, "boundary must be open or periodic, got '" + v + "'");
                 },
                 [](const RunConfig& c) { return std::string(c.lattice.boundary == Boundary::open ? "open" : "periodic"); }});
    real("gamma", [](RunConfig& c) -> double& { return c.coupling.gamma; });
    t.push_back({"lambda",
                 [](RunConfig& c, const std::string& v) {
                   std::string body = v;
                   if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
                   auto parts = split(body, ',');
                   if (parts.size() != 4) throw Error(ErrorCode::parse, "lambda needs four values, got '" + v + "'");
                   for (int k = 0; k < 4; ++k) c.coupling.lambda[k] = parse_expression(parts[k]);
                 },
                 [](const RunConfig& c) {
                   std::string s;
                   for (int k = 0; k < 4; ++k) s += (k ? "," : "") + exact(c.coupling.lambda[k]);
                   return s;
                 }});
    real("phi", [](RunConfig& c) -> double& { return c.coupling.phi; });
    t.push_back({"flux_pattern",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "uniform") c.coupling.flux_pattern = FluxPattern::uniform;
                   else if (v == "intracell-only") c.coupling.flux_pattern = FluxPattern::intracell_only;
                   else throw Error(ErrorCode::parse, "flux_pattern must be uniform or intracell-only, got '" + v + "'");
                 },
                 [](const RunConfig& c) {
                   return std::string(c.coupling.flux_pattern == FluxPattern::uniform ? "uniform" : "intracell-only");
                 }});

    real("classifier.zero_window", [](RunConfig& c) -> double& { return c.classifier.zero_window; });
    real("classifier.corner_weight", [](RunConfig& c) -> double& { return c.classifier.corner_weight; });
    real("classifier.edge_weight", [](RunConfig& c) -> double& { return c.classifier.edge_weight; });
    integer("classifier.corner_patch", [](RunConfig& c) -> int& { return c.classifier.corner_patch; });
    integer("classifier.boundary_ring", [](RunConfig& c) -> int& { return c.classifier.boundary_ring; });

    real("kappa", [](RunConfig& c) -> double& { return c.steady.kappa; });
    real("detuning", [](RunConfig& c) -> double& { return c.steady.detuning; });
    t.push_back({"pump", [](RunConfig& c, const std::string& v) { c.steady.pump = v; },
                 [](const RunConfig& c) { return c.steady.pump; }});
    t.push_back({"neighborhood", [](RunConfig& c, const std::string& v) { c.steady.neighborhood = parse_strategy(v); },
                 [](const RunConfig& c) { return std::string(strategy_name(c.steady.neighborhood)); }});
    real("r_threshold", [](RunConfig& c) -> double& { return c.steady.r_threshold; });

    auto axis = [&t](const std::string& key, bool periodic, GridAxis ScanSettings::*member) {
      t.push_back({key, [periodic, member](RunConfig& c, const std::string& v) { c.scan.*member = parse_axis(v, periodic); },
                   [member](const RunConfig& c) { return axis_text(c.scan.*member); }});
    };
    axis("scan.gamma_range", false, &ScanSettings::gamma_axis);
    axis("scan.phi_range", true, &ScanSettings::phi_axis);
    axis("scan.l1_range", false, &ScanSettings::l1_axis);
    axis("scan.l4_range", false, &ScanSettings::l4_axis);
    integer("scan.phi_steps", [](RunConfig& c) -> int& { return c.scan.phi_steps; });
    t.push_back({"scan.critical", [](RunConfig& c, const std::string& v) { c.scan.critical = parse_bool(v); },
                 [](const RunConfig& c) { return std::string(c.scan.critical ? "true" : "false"); }});

    real("aniso.gamma", [](RunConfig& c) -> double& { return c.scan.aniso_gamma; });
    real("aniso.phi", [](RunConfig& c) -> double& { return c.scan.aniso_phi; });
    real("aniso.lambda2", [](RunConfig& c) -> double& { return c.scan.aniso_lambda2; });
    real("aniso.lambda3", [](RunConfig& c) -> double& { return c.scan.aniso_lambda3; });

    t.push_back({"critical.indicator",
                 [](RunConfig& c, const std::string& v) { c.critical.indicator = parse_indicator(v); },
                 [](const RunConfig& c) { return std::string(indicator_name(c.critical.indicator)); }});
    integer("critical.phi_points", [](RunConfig& c) -> int& { return c.critical.phi_points; });
    real("critical.gamma_min", [](RunConfig& c) -> double& { return c.critical.gamma_min; });
    real("critical.gamma_max", [](RunConfig& c) -> double& { return c.critical.gamma_max; });
    real("critical.coarse_step", [](RunConfig& c) -> double& { return c.critical.coarse_step; });
    real("critical.resolution", [](RunConfig& c) -> double& { return c.critical.resolution; });
    real("critical.gap_tol", [](RunConfig& c) -> double& { return c.critical.gap_tol; });

    real("device.omega0_ghz", [](RunConfig& c) -> double& { return c.device.omega0_ghz; });
    real("device.delta_ghz", [](RunConfig& c) -> double& { return c.device.delta_ghz; });
    real("device.scale_mhz", [](RunConfig& c) -> double& { return c.device.scale_mhz; });
    real("device.guard_mhz", [](RunConfig& c) -> double& { return c.device.guard_mhz; });

    integer("workers", [](RunConfig& c) -> int& { return c.critical.workers; });
    t.push_back({"out_dir", [](RunConfig& c, const std::string& v) { c.out_dir = v; },
                 [](const RunConfig& c) { return c.out_dir; }});
    return t;
  }();
  return table;
}

const KeyHandler& handler(const std::string& key) {
  for (const auto& h : handlers())
    if (h.key == key) return h;
  throw Error(ErrorCode::parse, "unknown key '" + key + "'");
}

void parse_site_pump(const std::string& body, PumpSpec& pump, const LatticeSpec& spec) {
  auto parts = split(body, ',');
  if (parts.size() != 3 || parts[2].size() != 1)
    throw Error(ErrorCode::parse, "pump site must look like site:<cell_x>,<cell_y>,<A|B|C|D>");
  SiteId s{parse_int(parts[0]), parse_int(parts[1]), parse_sublattice(parts[2][0])};
  site_index(s, spec);
  pump.drives.emplace_back(s, 1.0);
}

} // namespace

double parse_expression(const std::string& text) {
  std::string t = trim(text);
  if (t.size() >= 2 && (t.front() == '"' || t.front() == '\'') && t.back() == t.front()) t = t.substr(1, t.size() - 2);
  return ExpressionParser(t).parse();
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  const KeyHandler& h = handler(trim(key));
  std::string v = trim(value);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) v = v.substr(1, v.size() - 2);
  h.set(cfg, v);
}

PumpSpec make_pump(const RunConfig& cfg) {
  PumpSpec pump;
  pump.detuning = cfg.steady.detuning;
  const std::string& p = cfg.steady.pump;
  if (p == "corners") {
    pump.drives = four_corner_pump(cfg.lattice).drives;
    return pump;
  }
  std::size_t start = 0;
  while (start < p.size()) {
    std::size_t end = p.find(';', start);
    std::string item = trim(p.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (item.rfind("site:", 0) != 0) throw Error(ErrorCode::parse, "pump must be 'corners' or site:<x>,<y>,<s>, got '" + p + "'");
    parse_site_pump(item.substr(5), pump, cfg.lattice);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return pump;
}

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& key, const std::string& why) {
    throw Error(ErrorCode::parse, key + ": " + why);
  };
  if (cfg.lattice.nx < 1) fail("nx", "must be >= 1");
  if (cfg.lattice.ny < 1) fail("ny", "must be >= 1");
  if (cfg.lattice.nx * cfg.lattice.ny > 4096) fail("nx", "lattice larger than 64x64 cells is not supported");
  if (cfg.lattice.boundary == Boundary::periodic && (cfg.lattice.nx < 2 || cfg.lattice.ny < 2))
    fail("boundary", "periodic boundary needs at least 2x2 cells");
  if (!(cfg.coupling.gamma >= 0)) fail("gamma", "must be >= 0");
  for (double l : cfg.coupling.lambda)
    if (!(l >= 0)) fail("lambda", "values must be >= 0");
  if (!(cfg.coupling.phi >= 0 && cfg.coupling.phi < 2 * std::numbers::pi)) fail("phi", "must lie in [0, 2pi)");
  try {
    validate(cfg.classifier);
  } catch (const Error& e) {
    fail("classifier", e.what());
  }
  if (!(cfg.steady.kappa > 0)) fail("kappa", "must be > 0");
  if (!std::isfinite(cfg.steady.detuning)) fail("detuning", "must be finite");
  if (!(cfg.steady.r_threshold > 0 && cfg.steady.r_threshold < 1)) fail("r_threshold", "must lie in (0, 1)");
  try {
    make_pump(cfg);
  } catch (const Error& e) {
    fail("pump", e.what());
  }
  if (cfg.scan.phi_steps < 1) fail("scan.phi_steps", "must be >= 1");
  for (const auto* a : {&cfg.scan.gamma_axis, &cfg.scan.l1_axis, &cfg.scan.l4_axis})
    if (a->min < 0) fail("scan", "gamma and lambda ranges must be >= 0");
  if (!(cfg.scan.aniso_gamma >= 0 && cfg.scan.aniso_lambda2 >= 0 && cfg.scan.aniso_lambda3 >= 0))
    fail("aniso", "couplings must be >= 0");
  if (!(cfg.scan.aniso_phi >= 0 && cfg.scan.aniso_phi < 2 * std::numbers::pi)) fail("aniso.phi", "must lie in [0, 2pi)");
  try {
    validate(cfg.critical);
  } catch (const Error& e) {
    fail("critical", e.what());
  }
  if (cfg.critical.workers < 1) fail("workers", "must be >= 1");
  if (!(cfg.device.scale_mhz > 0)) fail("device.scale_mhz", "must be > 0");
  if (!(cfg.device.guard_mhz >= 0)) fail("device.guard_mhz", "must be >= 0");
  if (cfg.out_dir.empty()) fail("out_dir", "must not be empty");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string content = line;
    if (auto hash = content.find('#'); hash != std::string::npos) content = content.substr(0, hash);
    content = trim(content);
    if (content.empty()) continue;
    try {
      if (content.front() == '[') {
        if (content.back() != ']') throw Error(ErrorCode::parse, "unterminated section header");
        section = trim(content.substr(1, content.size() - 2));
        continue;
      }
      auto eq = content.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::parse, "expected key = value");
      std::string key = trim(content.substr(0, eq));
      if (key.empty()) throw Error(ErrorCode::parse, "missing key");
      if (!section.empty()) key = section + "." + key;
      set_config_value(cfg, key, content.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, "line " + std::to_string(lineno) + ": " + e.what() + " [" + trim(line) + "]");
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& h : handlers()) out += h.key + " = " + h.get(cfg) + "\n";
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& h : handlers()) keys.push_back(h.key);
  return keys;
}

} // namespace hoti
