#ifndef HOTISIM_H
#define HOTISIM_H

/*
 * C interface to the 2D SSH lattice simulator.
 *
 * Every function that can fail returns a hoti_status. On failure the message
 * is available from hoti_last_error() until the next call on the same thread.
 * Handles are opaque; each *_free function accepts NULL.
 *
 * Functions that produce text take (buf, cap, needed): the required size
 * including the terminating NUL is stored in *needed, and
 * HOTI_ERR_BUFFER_TOO_SMALL is returned when cap is smaller (buf may be NULL
 * to query the size).
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(HOTISIM_BUILDING)
#    define HOTISIM_API __declspec(dllexport)
#  else
#    define HOTISIM_API __declspec(dllimport)
#  endif
#else
#  define HOTISIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hoti_status {
  HOTI_OK = 0,
  HOTI_ERR_INVALID_ARGUMENT = 1,
  HOTI_ERR_BOUNDS = 2,
  HOTI_ERR_COMMENSURABILITY = 3,
  HOTI_ERR_ASSEMBLY = 4,
  HOTI_ERR_INCOMPLETE_PLAQUETTE = 5,
  HOTI_ERR_SIZE = 6,
  HOTI_ERR_DOMAIN = 7,
  HOTI_ERR_UNDEFINED_RATIO = 8,
  HOTI_ERR_HARDWARE_RANGE = 9,
  HOTI_ERR_PARSE = 10,
  HOTI_ERR_IO = 11,
  HOTI_ERR_NUMERIC = 12,
  HOTI_ERR_NULL_ARGUMENT = 20,
  HOTI_ERR_BUFFER_TOO_SMALL = 21,
  HOTI_ERR_INTERNAL = 99
} hoti_status;

enum { HOTI_MODE_BULK = 0, HOTI_MODE_EDGE = 1, HOTI_MODE_CORNER = 2 };

typedef struct hoti_config hoti_config;
typedef struct hoti_model hoti_model;
typedef struct hoti_spectrum hoti_spectrum;
typedef struct hoti_field hoti_field;
typedef struct hoti_result hoti_result;

HOTISIM_API const char* hoti_version(void);
HOTISIM_API const char* hoti_last_error(void);
HOTISIM_API const char* hoti_status_name(hoti_status status);

/* Run configuration */
HOTISIM_API hoti_status hoti_config_new(hoti_config** out);
HOTISIM_API hoti_status hoti_config_parse(const char* text, hoti_config** out);
HOTISIM_API hoti_status hoti_config_load(const char* path, hoti_config** out);
HOTISIM_API hoti_status hoti_config_set(hoti_config* cfg, const char* key, const char* value);
HOTISIM_API hoti_status hoti_config_validate(const hoti_config* cfg);
HOTISIM_API hoti_status hoti_config_serialize(const hoti_config* cfg, char* buf, size_t cap, size_t* needed);
HOTISIM_API void hoti_config_free(hoti_config* cfg);

/* Hamiltonian of the configured lattice and couplings */
HOTISIM_API hoti_status hoti_model_build(const hoti_config* cfg, hoti_model** out);
HOTISIM_API int hoti_model_dimension(const hoti_model* model);
HOTISIM_API int hoti_model_link_count(const hoti_model* model);
HOTISIM_API hoti_status hoti_model_site_index(const hoti_model* model, int cell_x, int cell_y, char sublattice,
                                              int* index);
/* Row-major real and imaginary parts, each dimension * dimension doubles. */
HOTISIM_API hoti_status hoti_model_entries(const hoti_model* model, double* re, double* im);
HOTISIM_API void hoti_model_free(hoti_model* model);

/* Spectrum and mode classification */
HOTISIM_API hoti_status hoti_spectrum_compute(const hoti_model* model, const hoti_config* cfg, hoti_spectrum** out);
HOTISIM_API int hoti_spectrum_size(const hoti_spectrum* sp);
HOTISIM_API hoti_status hoti_spectrum_energies(const hoti_spectrum* sp, double* out);
HOTISIM_API hoti_status hoti_spectrum_classes(const hoti_spectrum* sp, int* out);
HOTISIM_API int hoti_spectrum_zecm_count(const hoti_spectrum* sp);
HOTISIM_API double hoti_spectrum_zero_gap(const hoti_spectrum* sp);
HOTISIM_API hoti_status hoti_spectrum_catalog_json(const hoti_spectrum* sp, char* buf, size_t cap, size_t* needed);
HOTISIM_API void hoti_spectrum_free(hoti_spectrum* sp);

/* Driven-dissipative steady state with the configured pump and kappa */
HOTISIM_API hoti_status hoti_steady_solve(const hoti_model* model, const hoti_config* cfg, hoti_field** out);
HOTISIM_API int hoti_field_size(const hoti_field* field);
HOTISIM_API hoti_status hoti_field_amplitudes(const hoti_field* field, double* re, double* im);
HOTISIM_API hoti_status hoti_field_sspn(const hoti_field* field, double* out);
HOTISIM_API double hoti_field_residual(const hoti_field* field);
/* R per corner: bottom-left, top-left, bottom-right, top-right. */
HOTISIM_API hoti_status hoti_field_corner_ratios(const hoti_field* field, const char* strategy, double out[4]);
HOTISIM_API void hoti_field_free(hoti_field* field);

/*
 * Runs a command (butterfly, phase-map, aniso-map, steady, r-sweep,
 * device-plan) and writes <stem>.csv, <stem>.json and <stem>.svg. The stem is
 * `out` without a .csv/.json/.svg extension, or <out_dir>/<command> when out
 * is NULL or empty. `result` may be NULL.
 */
HOTISIM_API hoti_status hoti_run(const char* command, const hoti_config* cfg, const char* out, hoti_result** result);
/* Compact JSON describing the run. */
HOTISIM_API hoti_status hoti_result_summary(const hoti_result* result, char* buf, size_t cap, size_t* needed);
HOTISIM_API int hoti_result_file_count(const hoti_result* result);
/* Path of the i-th written file, or NULL when out of range. */
HOTISIM_API const char* hoti_result_file(const hoti_result* result, int i);
HOTISIM_API void hoti_result_free(hoti_result* result);

#ifdef __cplusplus
}
#endif

#endif
