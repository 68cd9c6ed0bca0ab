/*
 * C interface to the tempered time-fractional advection-dispersion solver.
 *
 * Every call returns a tfade_status. On failure the message of the most
 * recent error on the calling thread is available from tfade_last_error().
 * Objects are opaque handles released with the matching *_free function.
 */
#ifndef TFADE_H
#define TFADE_H

#include <stddef.h>

#if defined(TFADE_BUILDING_LIBRARY)
#define TFADE_API __attribute__((visibility("default")))
#else
#define TFADE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tfade_status {
    TFADE_OK = 0,
    TFADE_ERR_INVALID_ARGUMENT = 1,
    TFADE_ERR_DOMAIN = 2,
    TFADE_ERR_OUT_OF_RANGE = 3,
    TFADE_ERR_CERTIFICATION = 4,
    TFADE_ERR_NUMERICAL = 5,
    TFADE_ERR_INTERNAL = 6
} tfade_status;

typedef enum tfade_method { TFADE_METHOD_FAST = 0, TFADE_METHOD_DIRECT = 1 } tfade_method;

typedef enum tfade_norm { TFADE_NORM_L2 = 0, TFADE_NORM_H1 = 1 } tfade_norm;

/* Message of the last failed call on this thread ("" if none). */
TFADE_API const char* tfade_last_error(void);
TFADE_API const char* tfade_status_name(tfade_status status);
TFADE_API const char* tfade_version(void);

TFADE_API tfade_status tfade_gamma(double x, double* out);

/* ---- sum-of-exponentials kernel ------------------------------------- */

typedef struct tfade_soe tfade_soe;

typedef struct tfade_soe_report {
    double max_rel_error;
    double argmax_t;
    double abs_bound_at_t_min;
    double abs_error_at_argmax;
} tfade_soe_report;

TFADE_API tfade_status tfade_soe_build(double alpha, double epsilon, double t_min, double t_max,
                                       tfade_soe** out);
TFADE_API void tfade_soe_free(tfade_soe* soe);
TFADE_API size_t tfade_soe_size(const tfade_soe* soe);
TFADE_API tfade_status tfade_soe_term(const tfade_soe* soe, size_t index, double* weight,
                                      double* exponent);
TFADE_API tfade_status tfade_soe_eval(const tfade_soe* soe, double t, double* out);
TFADE_API tfade_status tfade_soe_certify(const tfade_soe* soe, size_t n_samples,
                                         tfade_soe_report* report);

/* Kernel interval [tau_2/2, tbar_{N-1}] of the graded mesh t_n = T (n/N)^r. */
TFADE_API tfade_status tfade_soe_interval(double T, int N, double r, double* t_min,
                                          double* t_max);

/* ---- solver ----------------------------------------------------------- */

typedef struct tfade_config {
    double alpha;
    double lambda;
    double T;
    double L;
    int M;
    int N;
    double r;
    double epsilon;
    tfade_method method;
} tfade_config;

/* alpha 0.5, lambda 1, T 2, L 1, M 64, N 64, r 3, epsilon 1e-10, fast. */
TFADE_API tfade_config tfade_config_default(void);

typedef double (*tfade_initial_fn)(double x, void* user);
typedef double (*tfade_forcing_fn)(double x, double t, void* user);

typedef struct tfade_run tfade_run;

typedef struct tfade_run_info {
    double wall_time;
    size_t n_exp;
    size_t n_snapshots;
    double tau_power; /* max tau^(2-2alpha); >= 1/3 means the sufficient stability bound fails */
    size_t interior_points;
} tfade_run_info;

/* Manufactured case 1..3 with the given delta (the paper's runs use 1.8). */
TFADE_API tfade_status tfade_run_case(const tfade_config* config, int case_id, double delta,
                                      tfade_run** out);
TFADE_API tfade_status tfade_run_custom(const tfade_config* config, tfade_initial_fn initial,
                                        tfade_forcing_fn forcing, void* user, tfade_run** out);
TFADE_API void tfade_run_free(tfade_run* run);
TFADE_API tfade_status tfade_run_info_get(const tfade_run* run, tfade_run_info* info);
/* Number of solver warnings and the k-th warning text (valid while run lives). */
TFADE_API size_t tfade_run_warning_count(const tfade_run* run);
TFADE_API const char* tfade_run_warning(const tfade_run* run, size_t index);
/* k-th retained level: step index, time and a pointer to the M-1 interior values. */
TFADE_API tfade_status tfade_run_snapshot(const tfade_run* run, size_t index, int* step,
                                          double* t, const double** values);
/* Only for runs created by tfade_run_case. */
TFADE_API tfade_status tfade_run_max_error(const tfade_run* run, tfade_norm norm, double* out);
TFADE_API tfade_status tfade_run_exact(const tfade_run* run, double x, double t, double* out);

/* max_n ||U_a^n - U_b^n||_L2 / ||U_a^0 - U_b^0||_L2 for two initial data. */
TFADE_API tfade_status tfade_stability_probe(const tfade_config* config, tfade_initial_fn phi_a,
                                             tfade_initial_fn phi_b, tfade_forcing_fn forcing,
                                             void* user, double* max_ratio);

/* ---- error tables ----------------------------------------------------- */

TFADE_API tfade_status tfade_l2_norm(const double* v, size_t n, double h, double* out);
TFADE_API tfade_status tfade_h1_norm(const double* v, size_t n, double h, double* out);
/* orders[0] is NaN; orders[k] = log2(errors[k-1]/errors[k]); knobs must double. */
TFADE_API tfade_status tfade_order_table(const int* knobs, const double* errors, size_t n,
                                         double* orders);

#ifdef __cplusplus
}
#endif

#endif /* TFADE_H */
