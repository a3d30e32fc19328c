/*
 * nbldpc - extended non-binary LDPC codes on the binary erasure channel.
 *
 * C API over the core library: opaque handles, integer status codes,
 * thread-local error messages via nbldpc_last_error().
 */
#ifndef NBLDPC_H
#define NBLDPC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    NBLDPC_OK = 0,
    NBLDPC_EINVAL = 1,   /* invalid argument / precondition violated */
    NBLDPC_ERANGE = 2,   /* value out of range */
    NBLDPC_EIO = 3,      /* file could not be read or written */
    NBLDPC_EINTERNAL = 4 /* invariant violation inside the library */
} nbldpc_status;

typedef struct nbldpc_field nbldpc_field; /* GF(2^p) context */
typedef struct nbldpc_dd nbldpc_dd;       /* degree distribution pair */
typedef struct nbldpc_code nbldpc_code;   /* concrete Tanner graph code */
typedef struct nbldpc_dist nbldpc_dist;   /* extending distribution */

/* Message for the most recent failing call on this thread. */
const char* nbldpc_last_error(void);

/* ---- finite field ---- */

/* poly == 0 selects the default polynomial for p (1 <= p <= 8). */
nbldpc_status nbldpc_field_create(int p, unsigned poly, nbldpc_field** out);
void nbldpc_field_destroy(nbldpc_field* f);
nbldpc_status nbldpc_gf_add(const nbldpc_field* f, int a, int b, int* out);
nbldpc_status nbldpc_gf_mul(const nbldpc_field* f, int a, int b, int* out);
nbldpc_status nbldpc_gf_inv(const nbldpc_field* f, int a, int* out);

/* ---- degree distributions ---- */

/* Text format: lines "lambda <d> <coeff>" and "rho <d> <coeff>". */
nbldpc_status nbldpc_dd_load(const char* path, nbldpc_dd** out);
nbldpc_status nbldpc_dd_parse(const char* text, nbldpc_dd** out);
void nbldpc_dd_destroy(nbldpc_dd* dd);
nbldpc_status nbldpc_dd_design_rate(const nbldpc_dd* dd, double* out);
nbldpc_status nbldpc_dd_node_fraction(const nbldpc_dd* dd, int degree, double* out);
/* degrees: caller array of capacity *inout_n; on return *inout_n = count. */
nbldpc_status nbldpc_dd_symbol_degrees(const nbldpc_dd* dd, int* degrees, int* inout_n);

/* ---- extension matrices ---- */

/*
 * Exhaustive dmin-maximal selection of k_ext nontrivial extended bits.
 * cols must hold p + k_ext entries; receives the column integers
 * (binary decompositions), the first p being 1, 2, ..., 2^{p-1}.
 */
nbldpc_status nbldpc_select_extension(const nbldpc_field* f, int k_ext, int* cols,
                                      int* dmin_out);
/* Expected number of eligible symbols for a matrix given by columns. */
nbldpc_status nbldpc_expected_eligible(const nbldpc_field* f, const int* cols, int t,
                                       double eps, double* out);

/* ---- rate algebra ---- */

nbldpc_status nbldpc_extended_rate(double r, int p, double f, double* out);
/* Budget F = sum_d Lambda_d f_d = p (r / r_e - 1). */
nbldpc_status nbldpc_budget_for_rate(const nbldpc_dd* dd, double r_e, int p, double* out);
nbldpc_status nbldpc_normalized_gap(double rate, double threshold, double* out);

/* ---- codes ---- */

nbldpc_status nbldpc_peg_build(const nbldpc_dd* dd, int n, const nbldpc_field* f,
                               uint64_t seed, nbldpc_code** out);
nbldpc_status nbldpc_code_load(const char* path, nbldpc_code** out);
nbldpc_status nbldpc_code_save(const nbldpc_code* code, const char* path);
void nbldpc_code_destroy(nbldpc_code* code);
nbldpc_status nbldpc_code_dims(const nbldpc_code* code, int* n, int* m, int* k);

/* ---- extending distributions ---- */

/* Text format: "d: f_d" spreading lines, or explicit "d k f" triples. */
nbldpc_status nbldpc_dist_load(const nbldpc_field* f, const char* path, nbldpc_dist** out);
nbldpc_status nbldpc_dist_spreading(const nbldpc_field* f, const int* degrees,
                                    const double* f_d, int n, nbldpc_dist** out);
nbldpc_status nbldpc_dist_clustering(const nbldpc_field* f, const int* degrees,
                                     const double* f_d, int n, nbldpc_dist** out);
nbldpc_status nbldpc_dist_none(const nbldpc_field* f, nbldpc_dist** out);
void nbldpc_dist_destroy(nbldpc_dist* dist);
nbldpc_status nbldpc_dist_save(const nbldpc_dist* dist, const char* path);
nbldpc_status nbldpc_dist_average_extension(const nbldpc_dist* dist, const nbldpc_dd* dd,
                                            double* out);

/* ---- density evolution ---- */

typedef struct {
    int population;      /* message samples, >= 1000 */
    int max_iters;       /* iteration cap */
    double success_tol;  /* residual unresolved fraction counted as success */
    double bisection_tol;
    uint64_t seed;
} nbldpc_de_config;

void nbldpc_de_config_default(nbldpc_de_config* cfg);

#define NBLDPC_SELECT_DMIN 0
#define NBLDPC_SELECT_RANDOM 1

/*
 * Monte-Carlo density-evolution threshold of the (dd, dist) ensemble.
 * gap_out is the normalized gap at the ensemble's extended rate. When
 * trace_csv_path is non-NULL the bisection trace is written there
 * (columns eps, iterations, residual, converged).
 */
nbldpc_status nbldpc_threshold(const nbldpc_dd* dd, const nbldpc_field* f,
                               const nbldpc_dist* dist, int selection,
                               const nbldpc_de_config* cfg, double* threshold_out,
                               double* gap_out, const char* trace_csv_path);

/* ---- optimizer ---- */

typedef struct {
    int np;           /* DE population, >= 4 */
    double f_weight;  /* differential weight, (0, 2] */
    double cr;        /* crossover rate, [0, 1] */
    int generations;
    nbldpc_de_config de;
    uint64_t seed;
} nbldpc_opt_config;

void nbldpc_opt_config_default(nbldpc_opt_config* cfg);

/*
 * Differential-evolution search for spreading parameters {f_d} at target
 * extended rate r_e. degrees/f_d are caller arrays of capacity *inout_n;
 * on return *inout_n holds the symbol-degree count.
 */
nbldpc_status nbldpc_optimize(const nbldpc_dd* dd, const nbldpc_field* f, double r_e,
                              const nbldpc_opt_config* cfg, int* degrees, double* f_d,
                              int* inout_n, double* threshold_out, double* delta_out);

/* ---- finite-length simulation ---- */

/*
 * BER sweep on a concrete code: trials independent all-zero-codeword
 * transmissions per epsilon; ber_out/stderr_out hold n_eps entries
 * (source-bit erasure rate and its standard error).
 */
nbldpc_status nbldpc_ber_sweep(const nbldpc_code* code, const nbldpc_dist* dist,
                               int selection, const double* eps, int n_eps, int trials,
                               int max_iters, uint64_t seed, double* ber_out,
                               double* stderr_out);

#ifdef __cplusplus
}
#endif

#endif /* NBLDPC_H */
