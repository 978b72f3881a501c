/* Quantum-shuffling simulation library: free Gaussian wave-packet dynamics
 * under periodic von Neumann measurements.
 *
 * Opaque handles own their memory; every handle created by a zeno_*_create
 * call must be released with the matching zeno_*_free. Functions return
 * ZENO_OK on success; on failure zeno_last_error() carries a thread-local
 * message. All operations are pure and handles are immutable after creation,
 * so they may be shared freely across threads.
 */

#ifndef ZENO_ZENO_H
#define ZENO_ZENO_H

#include <stddef.h>

#if defined(_WIN32)
#define ZENO_API __declspec(dllexport)
#else
#define ZENO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zeno_status {
    ZENO_OK = 0,
    ZENO_ERR_INVALID_ARGUMENT = 1, /* bad values, windows, domains */
    ZENO_ERR_GRID = 2,             /* oracle grid cannot hold the packet */
    ZENO_ERR_FIT_FAILED = 3,       /* exponential fit did not converge */
    ZENO_ERR_INTERNAL = 4
} zeno_status;

typedef struct zeno_params zeno_params;
typedef struct zeno_schedule zeno_schedule;
typedef struct zeno_run zeno_run;

ZENO_API const char* zeno_version(void);
ZENO_API const char* zeno_status_name(zeno_status status);
/* Message for the most recent failure on this thread; empty string if none. */
ZENO_API const char* zeno_last_error(void);

/* ---- parameters and derived scales ---- */

ZENO_API zeno_status zeno_params_create(double hbar, double mass, double sigma0,
                                        double x0, double p0, zeno_params** out);
ZENO_API void zeno_params_free(zeno_params* params);

typedef struct zeno_scales {
    double tau;
    double tau_zeno;
    double tau_inflx;
    double p_spread;
    double e0;
    double mean_h;
    double delta_e;
    double momentum_ratio;
} zeno_scales;

ZENO_API zeno_status zeno_params_scales(const zeno_params* params, zeno_scales* out);

typedef enum zeno_natural_regime {
    ZENO_NATURAL_EHRENFEST_HUYGENS = 0,
    ZENO_NATURAL_FRESNEL = 1,
    ZENO_NATURAL_FRAUNHOFER = 2
} zeno_natural_regime;

ZENO_API zeno_status zeno_natural_regime_at(const zeno_params* params, double t,
                                            zeno_natural_regime* out);
ZENO_API const char* zeno_natural_regime_name(zeno_natural_regime regime);

/* 1 when p0/p_s <= 1/sqrt(2) (Zeno/anti-Zeno behavior observable), else 0. */
ZENO_API zeno_status zeno_overlap_condition(const zeno_params* params, int* ok);

/* ---- closed-form dynamics ---- */

ZENO_API zeno_status zeno_psi(const zeno_params* params, double x, double t,
                              double* re, double* im);
ZENO_API zeno_status zeno_density(const zeno_params* params, double x, double t,
                                  double* out);
ZENO_API zeno_status zeno_density_fresnel(const zeno_params* params, double x,
                                          double t, double* out);
ZENO_API zeno_status zeno_density_fraunhofer(const zeno_params* params, double x,
                                             double t, double* out);
ZENO_API zeno_status zeno_energy_moments(const zeno_params* params, double* mean_h,
                                         double* delta_e);
ZENO_API zeno_status zeno_correlation(const zeno_params* params, double t,
                                      double* re, double* im);
/* Unwrapped phase, continuous in t. */
ZENO_API zeno_status zeno_correlation_phase(const zeno_params* params, double t,
                                            double* out);
ZENO_API zeno_status zeno_survival(const zeno_params* params, double t, double* out);
ZENO_API zeno_status zeno_survival_short_time(const zeno_params* params, double t,
                                              double* out);

/* ---- measurement schedules and shuffling ---- */

ZENO_API zeno_status zeno_schedule_create(double delta_t, double total_time,
                                          double sample_dt, zeno_schedule** out);
ZENO_API void zeno_schedule_free(zeno_schedule* schedule);

typedef enum zeno_shuffle_regime {
    ZENO_SHUFFLE_PURE_ANTI_ZENO = 0,
    ZENO_SHUFFLE_CONVEX_ANTI_ZENO = 1,
    ZENO_SHUFFLE_CROSSOVER_ZENO = 2,
    ZENO_SHUFFLE_ZENO = 3
} zeno_shuffle_regime;

ZENO_API zeno_status zeno_classify_regime(const zeno_params* params, double delta_t,
                                          zeno_shuffle_regime* out);
ZENO_API const char* zeno_shuffle_regime_name(zeno_shuffle_regime regime);

/* gamma = delta_t / tau_Z^2 (survival), gamma' = gamma/2 (amplitude). Either
 * output may be NULL. */
ZENO_API zeno_status zeno_envelope_rates(const zeno_params* params, double delta_t,
                                         double* gamma, double* gamma_prime);

ZENO_API zeno_status zeno_shuffled_survival(const zeno_params* params,
                                            const zeno_schedule* schedule, double t,
                                            double* out);
ZENO_API zeno_status zeno_steady_arrow_survival(const zeno_params* params,
                                                const zeno_schedule* schedule,
                                                double t, double* out);

/* found receives 0/1; t is written only when found. */
ZENO_API zeno_status zeno_crossing_time(const zeno_params* params,
                                        const zeno_schedule* schedule, int* found,
                                        double* t);

/* ---- full experiment: trace columns + summary ---- */

ZENO_API zeno_status zeno_run_create(const zeno_params* params,
                                     const zeno_schedule* schedule, double fit_lo,
                                     double fit_hi, zeno_run** out);
ZENO_API void zeno_run_free(zeno_run* run);

ZENO_API size_t zeno_run_sample_count(const zeno_run* run);
/* Column pointers stay valid until the run is freed. The fit and delta
 * columns are NULL when the fit failed. */
ZENO_API const double* zeno_run_times(const zeno_run* run);
ZENO_API const double* zeno_run_unperturbed(const zeno_run* run);
ZENO_API const double* zeno_run_perturbed(const zeno_run* run);
ZENO_API const double* zeno_run_perturbed_phase(const zeno_run* run);
ZENO_API const double* zeno_run_envelope(const zeno_run* run);
ZENO_API const double* zeno_run_fit(const zeno_run* run);
ZENO_API const double* zeno_run_delta(const zeno_run* run);

typedef struct zeno_run_summary {
    double gamma_est;
    double gamma_prime_est;
    double gamma_prime_fit; /* NaN when fit_ok == 0 */
    double max_abs_delta;   /* NaN when fit_ok == 0 */
    double l2_delta;        /* NaN when fit_ok == 0 */
    double crossing_time;   /* valid when has_crossing == 1 */
    int has_crossing;
    int fit_ok;
    zeno_shuffle_regime regime;
} zeno_run_summary;

ZENO_API zeno_status zeno_run_get_summary(const zeno_run* run, zeno_run_summary* out);
/* Why the fit failed; empty string when fit_ok == 1. */
ZENO_API const char* zeno_run_fit_message(const zeno_run* run);

/* Standalone least-squares rate of y ~ exp(-g t) over [lo, hi]. */
ZENO_API zeno_status zeno_fit_exponential(const double* times, const double* values,
                                          size_t count, double lo, double hi,
                                          double* rate);

/* ---- independent grid oracle ---- */

typedef struct zeno_oracle_options {
    int n_points;          /* power of two >= 256; 0 -> 4096 */
    double pad_sigmas;     /* domain clearance in units of sigma_T; 0 -> 10 */
    double horizon;        /* comparison window [0, horizon]; 0 -> 1 */
    int compare_points;    /* correlation samples; 0 -> 101 */
} zeno_oracle_options;

typedef struct zeno_oracle_report {
    double norm_error;
    double x_mean_error;
    double p_mean_error;
    double mean_h_rel_error;
    double delta_e_rel_error;
    double correlation_max_error;
    double phase_max_error;
    double shuffle_max_error;
    int pass;
} zeno_oracle_report;

/* options may be NULL for defaults. Grid sizing failures return
 * ZENO_ERR_GRID with a suggestion in zeno_last_error(). */
ZENO_API zeno_status zeno_oracle_check(const zeno_params* params,
                                       const zeno_schedule* schedule,
                                       const zeno_oracle_options* options,
                                       zeno_oracle_report* out);

#ifdef __cplusplus
}
#endif

#endif /* ZENO_ZENO_H */
