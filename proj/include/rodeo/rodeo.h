/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the rodeo schedule library.
 *
 * Objects are opaque handles created by rodeo_*_create / rodeo_*_load style
 * calls and released with the matching rodeo_*_free (which accepts NULL).
 * Every fallible call returns a rodeo_status; on failure a message is kept in
 * thread-local storage until the next failing call on the same thread and can
 * be read with rodeo_last_error().
 *
 * Variable-length outputs use caller buffers: pass `capacity` entries in
 * `buffer` and receive the required count in `*needed`. A NULL buffer or a
 * short capacity returns RODEO_ERR_BUFFER with `*needed` set, so callers can
 * query first and allocate.
 */
#ifndef RODEO_RODEO_H
#define RODEO_RODEO_H

#include <stddef.h>
#include <stdint.h>

#if defined(RODEO_BUILDING_LIBRARY)
#define RODEO_API __attribute__((visibility("default")))
#else
#define RODEO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rodeo_status {
  RODEO_OK = 0,
  RODEO_ERR_DOMAIN = 1,     /* argument outside the operation's domain */
  RODEO_ERR_PARSE = 2,      /* malformed input file or descriptor */
  RODEO_ERR_LIMIT = 3,      /* size or enumeration limit exceeded */
  RODEO_ERR_QUADRATURE = 4, /* adaptive quadrature did not converge */
  RODEO_ERR_BUFFER = 5,     /* output buffer missing or too small */
  RODEO_ERR_NULL = 6,       /* required pointer argument was NULL */
  RODEO_ERR_INTERNAL = 7
} rodeo_status;

RODEO_API const char* rodeo_version(void);
RODEO_API const char* rodeo_status_name(rodeo_status status);
RODEO_API const char* rodeo_last_error(void);
/* For RODEO_ERR_PARSE: 1-based line (0 if not applicable) and field name. */
RODEO_API size_t rodeo_last_error_line(void);
RODEO_API const char* rodeo_last_error_field(void);

/* ---- schedules ---------------------------------------------------------- */

typedef struct rodeo_schedule rodeo_schedule;

RODEO_API rodeo_status rodeo_schedule_create(const double* times, size_t n, rodeo_schedule** out);
/* Geometric times with ratio 1/alpha summing to total_time; alpha = 1 is uniform. */
RODEO_API rodeo_status rodeo_schedule_superiteration(double alpha, size_t n, double total_time,
                                                     rodeo_schedule** out);
/* n draws of |N(0, sigma^2)|. */
RODEO_API rodeo_status rodeo_schedule_gaussian(double sigma, size_t n, uint64_t seed,
                                               rodeo_schedule** out);
/* CSV (one time per line) or, for a ".json" path, an array of times. */
RODEO_API rodeo_status rodeo_schedule_load(const char* path, rodeo_schedule** out);
/* Rounds every time down to a multiple of dt, dropping zeros. */
RODEO_API rodeo_status rodeo_schedule_trotter_round(const rodeo_schedule* s, double dt,
                                                    rodeo_schedule** out);
/* Drops entries below `floor`. */
RODEO_API rodeo_status rodeo_schedule_canonical(const rodeo_schedule* s, double floor,
                                                rodeo_schedule** out);
RODEO_API size_t rodeo_schedule_size(const rodeo_schedule* s);
RODEO_API double rodeo_schedule_total(const rodeo_schedule* s);
RODEO_API rodeo_status rodeo_schedule_times(const rodeo_schedule* s, double* buffer,
                                            size_t capacity, size_t* needed);
RODEO_API void rodeo_schedule_free(rodeo_schedule* s);

/* ---- spectral functions ------------------------------------------------- */

typedef struct rodeo_spectrum rodeo_spectrum;

typedef enum rodeo_density {
  RODEO_DENSITY_CONSTANT = 0,
  RODEO_DENSITY_GAUSSIAN = 1, /* exp(-E^2) */
  RODEO_DENSITY_TABULATED = 2
} rodeo_density;

RODEO_API rodeo_status rodeo_spectrum_discrete(const double* energies, const double* weights,
                                               size_t n, rodeo_spectrum** out);
/* table_* are ignored unless density is TABULATED. */
RODEO_API rodeo_status rodeo_spectrum_band(double delta_min, double delta_max,
                                           rodeo_density density, const double* table_energies,
                                           const double* table_values, size_t table_n,
                                           double total_weight, rodeo_spectrum** out);
/* "xi1": exp(-E^2) on [0, 1]; "xi2": constant on [0, 1]. */
RODEO_API rodeo_status rodeo_spectrum_preset(const char* name, rodeo_spectrum** out);
/* "energy,weight" CSV or, for a ".json" path, a band descriptor. */
RODEO_API rodeo_status rodeo_spectrum_load(const char* path, rodeo_spectrum** out);
/* 1 for a continuous band, 0 for discrete levels. */
RODEO_API int rodeo_spectrum_is_band(const rodeo_spectrum* s);
/* Band edges, or lowest/highest level of a discrete spectrum. */
RODEO_API rodeo_status rodeo_spectrum_range(const rodeo_spectrum* s, double* lo, double* hi);
RODEO_API void rodeo_spectrum_free(rodeo_spectrum* s);

typedef struct rodeo_result {
  double zeta;
  double success_probability;
  double target_weight;
  double fidelity;     /* target / (target + zeta); NaN if undefined */
  double raw_fidelity; /* surviving target weight */
  double infidelity;   /* zeta / (target + zeta); NaN if undefined */
} rodeo_result;

RODEO_API rodeo_status rodeo_characteristic_time(double delta_min, double* out);
RODEO_API rodeo_status rodeo_success_probability(double energy, double target_energy, double t,
                                                 double* out);
/* zeta by adaptive quadrature (bands) or direct sum (discrete). */
RODEO_API rodeo_status rodeo_rsn(const rodeo_spectrum* s, double target_energy,
                                 const rodeo_schedule* sched, double abs_tol, double rel_tol,
                                 double* out);
RODEO_API rodeo_status rodeo_evaluate(const rodeo_spectrum* s, double target_energy,
                                      const rodeo_schedule* sched, rodeo_result* out);

/* ---- constant-density band, target at E = 0 ----------------------------- */

RODEO_API rodeo_status rodeo_band_rsn_closed_form(double delta_min, double delta_max,
                                                  const rodeo_schedule* sched, double* out);
/* Closed form for short schedules, quadrature otherwise. */
RODEO_API rodeo_status rodeo_band_rsn(double delta_min, double delta_max,
                                      const rodeo_schedule* sched, double* out);
/* 2 (delta_max - delta_min): scale of the published optimization table. */
RODEO_API rodeo_status rodeo_table_convention_factor(double delta_min, double delta_max,
                                                     double* out);
RODEO_API rodeo_status rodeo_superiteration_limit_rsn(double delta_min, double delta_max,
                                                      double t1, double* out);
RODEO_API rodeo_status rodeo_asymptotic_rsn(double delta_min, double delta_max, double t1,
                                            double* out);

/* ---- cosine products ---------------------------------------------------- */

RODEO_API rodeo_status rodeo_product_function(double alpha, double theta, size_t n, double* out);
RODEO_API rodeo_status rodeo_product_function_limit(double alpha, double theta, size_t n_limit,
                                                    double* out);
RODEO_API rodeo_status rodeo_fourier_expansion(double alpha, double theta, size_t n, double* out);
RODEO_API rodeo_status rodeo_exp_regime_value(double b, size_t n, double* out);
RODEO_API rodeo_status rodeo_exp_regime_exact(double b, double theta, size_t n, double* out);
RODEO_API rodeo_status rodeo_rra_average_success(double delta_e, double sigma, size_t cycles,
                                                 double* out);

typedef struct rodeo_decay_fit {
  double gamma;
  double theta_min;
  double theta_max;
  double residual;
  size_t points;
  int pisot;
  int rejected;
  double trailing_max;     /* max C over [theta_max / alpha, theta_max] */
  double trailing_max_mid; /* same, ending at sqrt(theta_min * theta_max) */
  int non_decaying;
} rodeo_decay_fit;

/* Envelope maxima are written to env_theta / env_max (window centres). */
RODEO_API rodeo_status rodeo_fit_decay_exponent(double alpha, double theta_min, double theta_max,
                                                size_t windows, size_t n_limit,
                                                rodeo_decay_fit* out, double* env_theta,
                                                double* env_max, size_t capacity,
                                                size_t* needed);

/* ---- spin chains -------------------------------------------------------- */

typedef enum rodeo_model_kind { RODEO_MODEL_XX = 0, RODEO_MODEL_TFIM = 1 } rodeo_model_kind;
typedef enum rodeo_boundary {
  RODEO_BOUNDARY_DEFAULT = -1,
  RODEO_BOUNDARY_OPEN = 0,
  RODEO_BOUNDARY_PERIODIC = 1
} rodeo_boundary;
typedef enum rodeo_sector {
  RODEO_SECTOR_AUTO = 0,
  RODEO_SECTOR_ZERO_MAGNETIZATION = 1,
  RODEO_SECTOR_EVEN_PARITY = 2,
  RODEO_SECTOR_ODD_PARITY = 3,
  RODEO_SECTOR_FULL = 4
} rodeo_sector;
typedef enum rodeo_initial_kind {
  RODEO_INITIAL_BASIS_INDEX = 0,
  RODEO_INITIAL_FUSION = 1,
  RODEO_INITIAL_PLUS_PROJECTED = 2,
  RODEO_INITIAL_CUSTOM = 3
} rodeo_initial_kind;

typedef struct rodeo_model_spec {
  rodeo_model_kind model;
  int length;
  double coupling;
  double field;
  rodeo_boundary boundary;
  rodeo_sector sector;
} rodeo_model_spec;

/* A diagonalized sector Hamiltonian. */
typedef struct rodeo_model rodeo_model;

RODEO_API void rodeo_model_spec_default(rodeo_model_spec* spec);
RODEO_API rodeo_status rodeo_model_create(const rodeo_model_spec* spec, rodeo_model** out);
RODEO_API size_t rodeo_model_dim(const rodeo_model* m);
RODEO_API rodeo_status rodeo_model_eigenvalues(const rodeo_model* m, double* buffer,
                                               size_t capacity, size_t* needed);
/* Sector basis bitstrings (site 0 = most significant bit, 1 = spin down). */
RODEO_API rodeo_status rodeo_model_basis(const rodeo_model* m, uint32_t* buffer, size_t capacity,
                                         size_t* needed);
RODEO_API rodeo_status rodeo_model_ground_energy(const rodeo_model* m, double* out);
/* full = 0: gap inside the sector; full = 1: gap of the whole spectrum. */
RODEO_API rodeo_status rodeo_model_gap(const rodeo_model* m, int full, double* out);
/* Absolute width of the target manifold, 1e-10 max(1, |H|). */
RODEO_API double rodeo_model_tolerance(const rodeo_model* m);
/* Writes the normalized state (dim entries). `amplitudes` is read for CUSTOM. */
RODEO_API rodeo_status rodeo_model_initial_state(const rodeo_model* m, rodeo_initial_kind kind,
                                                 size_t index, const double* amplitudes,
                                                 size_t n_amplitudes, double* buffer,
                                                 size_t capacity, size_t* needed);
/* |<E_k|psi>|^2 as a discrete spectrum. */
RODEO_API rodeo_status rodeo_model_overlaps(const rodeo_model* m, const double* psi, size_t n,
                                            rodeo_spectrum** out);
RODEO_API rodeo_status rodeo_model_fidelity(const rodeo_model* m, const double* psi, size_t n,
                                            double target_energy, const rodeo_schedule* sched,
                                            rodeo_result* out);
RODEO_API void rodeo_model_free(rodeo_model* m);

/* ---- objectives and optimizers ------------------------------------------ */

typedef struct rodeo_objective rodeo_objective;

/* Returns the figure of merit for a schedule; NaN signals failure. */
typedef double (*rodeo_objective_fn)(const double* times, size_t n, void* user);

RODEO_API rodeo_status rodeo_objective_band(double delta_min, double delta_max,
                                            rodeo_objective** out);
RODEO_API rodeo_status rodeo_objective_rsn(const rodeo_spectrum* s, double target_energy,
                                           rodeo_objective** out);
/* 1 - F for state psi; the ground energy of the model is the target. */
RODEO_API rodeo_status rodeo_objective_infidelity(const rodeo_model* m, const double* psi,
                                                  size_t n, rodeo_objective** out);
RODEO_API rodeo_status rodeo_objective_callback(rodeo_objective_fn fn, void* user,
                                                rodeo_objective** out);
/* inner evaluated on the schedule rounded down to multiples of dt. */
RODEO_API rodeo_status rodeo_objective_trotter(const rodeo_objective* inner, double dt,
                                               rodeo_objective** out);
RODEO_API rodeo_status rodeo_objective_evaluate(const rodeo_objective* o,
                                                const rodeo_schedule* sched, double* out);
RODEO_API void rodeo_objective_free(rodeo_objective* o);

typedef struct rodeo_config {
  size_t budget;
  size_t restarts;
  uint64_t seed;
  double tolerance;
  double alpha_low;
  double alpha_high;
  double time_floor;
  size_t grid_points;
  double alpha_precision;
  size_t mc_samples;
  size_t sigma_grid_points;
} rodeo_config;

RODEO_API void rodeo_config_default(rodeo_config* cfg);

typedef struct rodeo_times_result {
  double best_objective;
  size_t evaluations;
  size_t restarts;
  int converged;
} rodeo_times_result;

/* restart_bests receives one value per restart (size query as usual; pass
 * NULL and 0 to skip). */
RODEO_API rodeo_status rodeo_optimize_times(const rodeo_objective* o, size_t n, double t_limit,
                                            const rodeo_config* cfg, rodeo_schedule** best,
                                            rodeo_times_result* out, double* restart_bests,
                                            size_t capacity);

typedef struct rodeo_alpha_result {
  double alpha;
  double objective;
  size_t evaluations;
  int flat;
} rodeo_alpha_result;

RODEO_API rodeo_status rodeo_optimize_alpha(const rodeo_objective* o, size_t n, double total_time,
                                            const rodeo_config* cfg, rodeo_alpha_result* out);

typedef struct rodeo_curve_point {
  double total_time;
  double alpha;
  double objective;
  int flat;
} rodeo_curve_point;

/* `out` must hold m points. */
RODEO_API rodeo_status rodeo_adaptive_alpha_curve(const rodeo_objective* o, size_t n,
                                                  const double* t_grid, size_t m, int monotone,
                                                  const rodeo_config* cfg, rodeo_curve_point* out);
RODEO_API rodeo_status rodeo_fixed_alpha_curve(const rodeo_objective* o, double alpha, size_t n,
                                               const double* t_grid, size_t m,
                                               rodeo_curve_point* out);

typedef struct rodeo_rra_result {
  double sigma;
  size_t cycles;
  double mean_objective;
  double standard_error;
  size_t evaluations;
} rodeo_rra_result;

/* shots receives cfg->mc_samples per-schedule objectives (NULL to skip). */
RODEO_API rodeo_status rodeo_optimize_rra_sigma(const rodeo_objective* o, size_t n_max,
                                                double total_time, const rodeo_config* cfg,
                                                rodeo_rra_result* out, double* shots,
                                                size_t capacity);
RODEO_API rodeo_status rodeo_rra_at_sigma(const rodeo_objective* o, double sigma, size_t cycles,
                                          const rodeo_config* cfg, rodeo_rra_result* out,
                                          double* shots, size_t capacity);
RODEO_API size_t rodeo_rra_cycles(double sigma, double total_time, size_t n_max);

#ifdef __cplusplus
}
#endif

#endif /* RODEO_RODEO_H */
