#include "hotisim/hotisim.h"

#include "hoti/commands.hpp"
#include "hoti/config.hpp"
#include "hoti/error.hpp"
#include "hoti/spectrum.hpp"
#include "hoti/steady_state.hpp"

#include <cstring>
#include <limits>
#include <new>
#include <string>

struct hoti_config {
  hoti::RunConfig cfg;
};

struct hoti_model {
  hoti::LatticeSpec spec;
  int links = 0;
  hoti::HamiltonianMatrix h;
};

struct hoti_spectrum {
  hoti::EigenSystem es;
  hoti::ModeCatalog cat;
};

struct hoti_field {
  hoti::SteadyStateField field;
};

struct hoti_result {
  hoti::CommandResult res;
};

namespace {

thread_local std::string last_error;

hoti_status fail(hoti_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class Fn>
hoti_status guard(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const hoti::Error& e) {
    return fail(static_cast<hoti_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HOTI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HOTI_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HOTI_ERR_INTERNAL, "unknown exception");
  }
}

hoti_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1)
    return fail(HOTI_ERR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(s.size() + 1) + " bytes");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return HOTI_OK;
}

#define HOTI_REQUIRE(ptr)                                                                                              \
  do {                                                                                                                 \
    if (!(ptr)) return fail(HOTI_ERR_NULL_ARGUMENT, #ptr " must not be NULL");                                         \
  } while (0)

} // namespace

extern "C" {

const char* hoti_version(void) {
  return "1.0.0";
}

const char* hoti_last_error(void) {
  return last_error.c_str();
}

const char* hoti_status_name(hoti_status status) {
  switch (status) {
  case HOTI_OK: return "ok";
  case HOTI_ERR_NULL_ARGUMENT: return "null_argument";
  case HOTI_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
  case HOTI_ERR_INTERNAL: return "internal";
  default:
    if (status >= HOTI_ERR_INVALID_ARGUMENT && status <= HOTI_ERR_NUMERIC)
      return hoti::error_code_name(static_cast<hoti::ErrorCode>(status));
    return "unknown";
  }
}

hoti_status hoti_config_new(hoti_config** out) {
  HOTI_REQUIRE(out);
  return guard([&] {
    *out = new hoti_config{};
    return HOTI_OK;
  });
}

hoti_status hoti_config_parse(const char* text, hoti_config** out) {
  HOTI_REQUIRE(text);
  HOTI_REQUIRE(out);
  return guard([&] {
    *out = new hoti_config{hoti::parse_config(text)};
    return HOTI_OK;
  });
}

hoti_status hoti_config_load(const char* path, hoti_config** out) {
  HOTI_REQUIRE(path);
  HOTI_REQUIRE(out);
  return guard([&] {
    *out = new hoti_config{hoti::load_config(path)};
    return HOTI_OK;
  });
}

hoti_status hoti_config_set(hoti_config* cfg, const char* key, const char* value) {
  HOTI_REQUIRE(cfg);
  HOTI_REQUIRE(key);
  HOTI_REQUIRE(value);
  return guard([&] {
    hoti::RunConfig next = cfg->cfg;
    try {
      hoti::set_config_value(next, key, value);
    } catch (const hoti::Error& e) {
      throw hoti::Error(e.code(), std::string(key) + ": " + e.what());
    }
    cfg->cfg = std::move(next);
    return HOTI_OK;
  });
}

hoti_status hoti_config_validate(const hoti_config* cfg) {
  HOTI_REQUIRE(cfg);
  return guard([&] {
    hoti::validate(cfg->cfg);
    return HOTI_OK;
  });
}

hoti_status hoti_config_serialize(const hoti_config* cfg, char* buf, size_t cap, size_t* needed) {
  HOTI_REQUIRE(cfg);
  return guard([&] { return copy_out(hoti::serialize_config(cfg->cfg), buf, cap, needed); });
}

void hoti_config_free(hoti_config* cfg) {
  delete cfg;
}

hoti_status hoti_model_build(const hoti_config* cfg, hoti_model** out) {
  HOTI_REQUIRE(cfg);
  HOTI_REQUIRE(out);
  return guard([&] {
    hoti::validate(cfg->cfg);
    auto links = hoti::enumerate_links(cfg->cfg.lattice, cfg->cfg.coupling);
    *out = new hoti_model{cfg->cfg.lattice, static_cast<int>(links.size()),
                          hoti::build_hamiltonian(links, cfg->cfg.lattice)};
    return HOTI_OK;
  });
}

int hoti_model_dimension(const hoti_model* model) {
  return model ? model->h.dimension() : -1;
}

int hoti_model_link_count(const hoti_model* model) {
  return model ? model->links : -1;
}

hoti_status hoti_model_site_index(const hoti_model* model, int cell_x, int cell_y, char sublattice, int* index) {
  HOTI_REQUIRE(model);
  HOTI_REQUIRE(index);
  return guard([&] {
    *index = hoti::site_index(hoti::SiteId{cell_x, cell_y, hoti::parse_sublattice(sublattice)}, model->spec);
    return HOTI_OK;
  });
}

hoti_status hoti_model_entries(const hoti_model* model, double* re, double* im) {
  HOTI_REQUIRE(model);
  HOTI_REQUIRE(re);
  HOTI_REQUIRE(im);
  return guard([&] {
    const auto& m = model->h.entries();
    const Eigen::Index n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        re[i * n + j] = m(i, j).real();
        im[i * n + j] = m(i, j).imag();
      }
    return HOTI_OK;
  });
}

void hoti_model_free(hoti_model* model) {
  delete model;
}

hoti_status hoti_spectrum_compute(const hoti_model* model, const hoti_config* cfg, hoti_spectrum** out) {
  HOTI_REQUIRE(model);
  HOTI_REQUIRE(cfg);
  HOTI_REQUIRE(out);
  return guard([&] {
    auto es = hoti::diagonalize(model->h);
    auto cat = hoti::classify_modes(es, model->spec, cfg->cfg.classifier);
    *out = new hoti_spectrum{std::move(es), std::move(cat)};
    return HOTI_OK;
  });
}

int hoti_spectrum_size(const hoti_spectrum* sp) {
  return sp ? static_cast<int>(sp->es.eigenvalues.size()) : -1;
}

hoti_status hoti_spectrum_energies(const hoti_spectrum* sp, double* out) {
  HOTI_REQUIRE(sp);
  HOTI_REQUIRE(out);
  for (Eigen::Index k = 0; k < sp->es.eigenvalues.size(); ++k) out[k] = sp->es.eigenvalues(k);
  return HOTI_OK;
}

hoti_status hoti_spectrum_classes(const hoti_spectrum* sp, int* out) {
  HOTI_REQUIRE(sp);
  HOTI_REQUIRE(out);
  for (std::size_t k = 0; k < sp->cat.modes.size(); ++k) out[k] = static_cast<int>(sp->cat.modes[k].mode_class);
  return HOTI_OK;
}

int hoti_spectrum_zecm_count(const hoti_spectrum* sp) {
  return sp ? hoti::count_zecm(sp->cat) : -1;
}

double hoti_spectrum_zero_gap(const hoti_spectrum* sp) {
  if (!sp || sp->es.eigenvalues.size() < 5) return std::numeric_limits<double>::quiet_NaN();
  return hoti::zero_gap(sp->es);
}

hoti_status hoti_spectrum_catalog_json(const hoti_spectrum* sp, char* buf, size_t cap, size_t* needed) {
  HOTI_REQUIRE(sp);
  return guard([&] { return copy_out(hoti::catalog_to_json(sp->cat), buf, cap, needed); });
}

void hoti_spectrum_free(hoti_spectrum* sp) {
  delete sp;
}

hoti_status hoti_steady_solve(const hoti_model* model, const hoti_config* cfg, hoti_field** out) {
  HOTI_REQUIRE(model);
  HOTI_REQUIRE(cfg);
  HOTI_REQUIRE(out);
  return guard([&] {
    hoti::RunConfig c = cfg->cfg;
    c.lattice = model->spec;
    auto pump = hoti::make_pump(c);
    *out = new hoti_field{hoti::solve_steady_state(model->h, pump, {c.steady.kappa})};
    return HOTI_OK;
  });
}

int hoti_field_size(const hoti_field* field) {
  return field ? static_cast<int>(field->field.sspn.size()) : -1;
}

hoti_status hoti_field_amplitudes(const hoti_field* field, double* re, double* im) {
  HOTI_REQUIRE(field);
  HOTI_REQUIRE(re);
  HOTI_REQUIRE(im);
  for (Eigen::Index k = 0; k < field->field.amplitudes.size(); ++k) {
    re[k] = field->field.amplitudes(k).real();
    im[k] = field->field.amplitudes(k).imag();
  }
  return HOTI_OK;
}

hoti_status hoti_field_sspn(const hoti_field* field, double* out) {
  HOTI_REQUIRE(field);
  HOTI_REQUIRE(out);
  for (Eigen::Index k = 0; k < field->field.sspn.size(); ++k) out[k] = field->field.sspn(k);
  return HOTI_OK;
}

double hoti_field_residual(const hoti_field* field) {
  return field ? field->field.residual : std::numeric_limits<double>::quiet_NaN();
}

hoti_status hoti_field_corner_ratios(const hoti_field* field, const char* strategy, double out[4]) {
  HOTI_REQUIRE(field);
  HOTI_REQUIRE(out);
  return guard([&] {
    auto s = strategy ? hoti::parse_strategy(strategy) : hoti::NeighborhoodStrategy::nearest6;
    auto r = hoti::corner_ratios(field->field, s);
    for (int c = 0; c < 4; ++c) out[c] = r[c];
    return HOTI_OK;
  });
}

void hoti_field_free(hoti_field* field) {
  delete field;
}

hoti_status hoti_run(const char* command, const hoti_config* cfg, const char* out, hoti_result** result) {
  HOTI_REQUIRE(command);
  HOTI_REQUIRE(cfg);
  if (result) *result = nullptr;
  return guard([&] {
    hoti::validate(cfg->cfg);
    auto stem = hoti::output_stem(command, out ? out : "", cfg->cfg.out_dir);
    auto res = hoti::run_command(command, cfg->cfg, stem);
    if (result) *result = new hoti_result{std::move(res)};
    return HOTI_OK;
  });
}

hoti_status hoti_result_summary(const hoti_result* result, char* buf, size_t cap, size_t* needed) {
  HOTI_REQUIRE(result);
  return guard([&] { return copy_out(result->res.summary, buf, cap, needed); });
}

int hoti_result_file_count(const hoti_result* result) {
  return result ? static_cast<int>(result->res.files.size()) : -1;
}

const char* hoti_result_file(const hoti_result* result, int i) {
  if (!result || i < 0 || i >= static_cast<int>(result->res.files.size())) return nullptr;
  return result->res.files[static_cast<std::size_t>(i)].c_str();
}

void hoti_result_free(hoti_result* result) {
  delete result;
}

} // extern "C"
