/*
 * raptorwe: weight distribution analysis of fixed-rate Raptor code ensembles
 * with linear random precodes.
 *
 * C interface. Every fallible call returns an rwe_status; on failure the
 * message is available from rwe_last_error() on the same thread until the
 * next failing call. Handles are opaque, immutable once created, and may be
 * shared between threads. Output arrays are caller-allocated.
 *
 * Weights are log2 values; -inf marks an empty weight class.
 */
#ifndef RAPTORWE_RAPTORWE_H
#define RAPTORWE_RAPTORWE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RAPTORWE_BUILDING_LIBRARY)
#    define RAPTORWE_API __declspec(dllexport)
#  else
#    define RAPTORWE_API __declspec(dllimport)
#  endif
#else
#  define RAPTORWE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rwe_status {
  RWE_OK = 0,
  RWE_ERR_INVALID_ARGUMENT = 1,
  RWE_ERR_PARSE = 2,
  RWE_ERR_OUT_OF_RANGE = 3,
  RWE_ERR_INFEASIBLE = 4,
  RWE_ERR_IO = 5,
  RWE_ERR_INTERNAL = 6
} rwe_status;

/* RWE_MODE_PAPER counts 2^k precode inputs (the closed-form average);
 * RWE_MODE_EXACT counts the 2^k - 1 nonzero inputs over i.i.d. uniform
 * generator matrices. */
typedef enum rwe_mode { RWE_MODE_PAPER = 0, RWE_MODE_EXACT = 1 } rwe_mode;

typedef struct rwe_distribution rwe_distribution;
typedef struct rwe_growth_model rwe_growth_model;

/* Finite-length geometry, 1 <= k <= h <= n. Build with the constructors below
 * so the invariants are checked. */
typedef struct rwe_ensemble {
  uint32_t n;
  uint32_t h;
  uint32_t k;
} rwe_ensemble;

RAPTORWE_API const char* rwe_version(void);
RAPTORWE_API const char* rwe_last_error(void);
RAPTORWE_API const char* rwe_status_string(rwe_status status);

/* ---- degree distributions ---------------------------------------------- */

/* `degree,probability` lines, '#' comments. Probabilities must sum to 1
 * within 1e-3 and are renormalized. */
RAPTORWE_API rwe_status rwe_distribution_parse(const char* text, rwe_distribution** out);
RAPTORWE_API rwe_status rwe_distribution_load(const char* path, rwe_distribution** out);
/* "omega1" or "omega2". */
RAPTORWE_API rwe_status rwe_distribution_builtin(const char* name, rwe_distribution** out);
/* Builtin name if it is one, else a file path. */
RAPTORWE_API rwe_status rwe_distribution_resolve(const char* name_or_path, rwe_distribution** out);
RAPTORWE_API void rwe_distribution_free(rwe_distribution* dist);

RAPTORWE_API size_t rwe_distribution_size(const rwe_distribution* dist);
RAPTORWE_API rwe_status rwe_distribution_entry(const rwe_distribution* dist, size_t index, uint32_t* degree,
                                               double* probability);
RAPTORWE_API uint32_t rwe_distribution_max_degree(const rwe_distribution* dist);
RAPTORWE_API double rwe_distribution_mean_degree(const rwe_distribution* dist);

/* ---- ensemble geometry -------------------------------------------------- */

/* h = r_i n and k = r_o h must be integers (to 4-decimal rate resolution). */
RAPTORWE_API rwe_status rwe_ensemble_from_rates(uint32_t n, double inner_rate, double outer_rate,
                                                rwe_ensemble* out);
RAPTORWE_API rwe_status rwe_ensemble_from_lengths(uint32_t n, uint32_t h, uint32_t k, rwe_ensemble* out);

/* ---- finite-length spectrum --------------------------------------------- */

RAPTORWE_API double rwe_log2_binomial(uint64_t m, uint64_t t);
RAPTORWE_API rwe_status rwe_parity_prob(uint32_t j, uint32_t l, uint32_t h, double* out);
RAPTORWE_API rwe_status rwe_output_bit_prob(uint32_t l, uint32_t h, const rwe_distribution* dist, double* out);
RAPTORWE_API rwe_status rwe_lt_iowe_log(uint32_t l, uint32_t w, const rwe_ensemble* ensemble,
                                        const rwe_distribution* dist, double* out);
RAPTORWE_API rwe_status rwe_outer_we_log(uint32_t l, const rwe_ensemble* ensemble, rwe_mode mode, double* out);
/* Writes log2 A_w for w = 0..n; `len` must be at least n + 1. threads = 0
 * uses every hardware thread. */
RAPTORWE_API rwe_status rwe_raptor_awe(const rwe_ensemble* ensemble, const rwe_distribution* dist, rwe_mode mode,
                                       unsigned threads, double* log2_aw, size_t len);

/* ---- asymptotic growth rate --------------------------------------------- */

RAPTORWE_API rwe_status rwe_binary_entropy(double x, double* out);
RAPTORWE_API rwe_status rwe_parity_prob_asym(uint32_t j, double l_tilde, double* out);
RAPTORWE_API rwe_status rwe_p_asym(double l_tilde, const rwe_distribution* dist, double* out);

/* grid_points = 0 selects the default uniform grid (4096 points). */
RAPTORWE_API rwe_status rwe_growth_model_create(const rwe_distribution* dist, size_t grid_points,
                                                rwe_growth_model** out);
RAPTORWE_API void rwe_growth_model_free(rwe_growth_model* model);

RAPTORWE_API rwe_status rwe_objective(const rwe_growth_model* model, double w_tilde, double l_tilde,
                                      double inner_rate, double* out);
RAPTORWE_API rwe_status rwe_f_max(const rwe_growth_model* model, double w_tilde, double inner_rate, double* value,
                                  double* argmax);
RAPTORWE_API rwe_status rwe_f_max_star(const rwe_growth_model* model, double inner_rate, double* out);
RAPTORWE_API rwe_status rwe_growth_rate(const rwe_growth_model* model, double w_tilde, double inner_rate,
                                        double outer_rate, double* growth, double* l_tilde_argmax);
RAPTORWE_API rwe_status rwe_g_zero_plus(const rwe_growth_model* model, double inner_rate, double outer_rate,
                                        double* out);
/* 0 whenever G(0+) >= 0; check rwe_g_zero_plus to tell "never crosses" from
 * the boundary case. */
RAPTORWE_API rwe_status rwe_typical_dmin(const rwe_growth_model* model, double inner_rate, double outer_rate,
                                         double* out);
/* Samples G at `count` weights; growth/argmax have `count` slots. d_min and
 * g_zero_plus may be NULL. */
RAPTORWE_API rwe_status rwe_growth_curve(const rwe_growth_model* model, double inner_rate, double outer_rate,
                                         const double* w_tilde, size_t count, unsigned threads, double* growth,
                                         double* l_tilde_argmax, double* d_min, double* g_zero_plus);

/* ---- rate regions ------------------------------------------------------- */

RAPTORWE_API rwe_status rwe_in_positive_region(const rwe_growth_model* model, double inner_rate,
                                               double outer_rate, int* out);
/* r_o*(r_i) for each grid value; NaN where r_o* <= 0 (no region point). */
RAPTORWE_API rwe_status rwe_p_boundary(const rwe_growth_model* model, const double* inner_rates, size_t count,
                                       unsigned threads, double* outer_rate_star);
/* Corrected phi by default (+inf where the bound is vacuous); as_printed != 0
 * evaluates the formula with the opposite denominator sign. */
RAPTORWE_API rwe_status rwe_outer_region_phi(double outer_rate, double mean_degree, int as_printed, double* out);
RAPTORWE_API rwe_status rwe_in_outer_region(double inner_rate, double outer_rate, double mean_degree,
                                            int as_printed, int* out);
/* Row-major membership flags, row = inner rate index; both outputs need
 * n_inner * n_outer bytes. */
RAPTORWE_API rwe_status rwe_membership_grid(const rwe_growth_model* model, const double* inner_rates,
                                            size_t n_inner, const double* outer_rates, size_t n_outer,
                                            int phi_as_printed, unsigned threads, uint8_t* in_p, uint8_t* in_o);
RAPTORWE_API rwe_status rwe_gv_bound(double delta, double* out);
RAPTORWE_API rwe_status rwe_gv_delta(double rate, double* out);
/* d_min at r_i = rate / r_o for each r_o; NaN where rate / r_o > 1. The
 * threshold is the largest r_o with d_min > 0, or NaN when there is none. */
RAPTORWE_API rwe_status rwe_isorate_scan(const rwe_growth_model* model, double rate, const double* outer_rates,
                                         size_t count, unsigned threads, double* d_min, double* threshold);

/* ---- ensemble oracle ---------------------------------------------------- */

RAPTORWE_API rwe_status rwe_parity_prob_bruteforce(uint32_t j, uint32_t l, uint32_t h, double* out);
/* Monte-Carlo average over `samples` realizations (k <= 16, samples >= 100);
 * both outputs need n + 1 slots. Result depends only on (inputs, seed). */
RAPTORWE_API rwe_status rwe_estimate_spectrum(const rwe_ensemble* ensemble, const rwe_distribution* dist,
                                              uint64_t samples, uint64_t seed, unsigned threads, double* mean_aw,
                                              double* std_err, size_t len);
/* Chi-square fit of the LT output weight given input weight l against
 * Binomial(n, p_l). Any output pointer may be NULL. */
RAPTORWE_API rwe_status rwe_lt_weight_law_check(uint32_t h, uint32_t n, uint32_t l, const rwe_distribution* dist,
                                                uint64_t trials, uint64_t seed, double* p_l, double* chi_square,
                                                uint32_t* degrees_of_freedom, double* p_value);

#ifdef __cplusplus
}
#endif

#endif /* RAPTORWE_RAPTORWE_H */
