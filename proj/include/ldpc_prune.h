/*
 * ldpc_prune — C API for QC-LDPC pruning-pattern analysis and optimization.
 *
 * The library evaluates protograph EXIT (PEXIT) decoding thresholds of
 * shortened/punctured base matrices, optimizes joint shorten/puncture
 * patterns with a multi-stage beam search, and validates patterns with a
 * Monte Carlo BER/FER harness (systematic QC encoder + sum-product decoder
 * over BPSK/AWGN).
 *
 * All objects are opaque handles created and destroyed by the library.
 * Functions return LP_OK on success; on failure they return a status code
 * and leave a human-readable message in lp_last_error() (thread-local).
 * Column indices in patterns are 1-based.
 */

#ifndef LDPC_PRUNE_H
#define LDPC_PRUNE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lp_status {
    LP_OK = 0,
    LP_EPARSE = 1,     /* malformed input text */
    LP_EINVAL = 2,     /* contract violation (validation failure) */
    LP_ERANGE = 3,     /* index or parameter out of range */
    LP_EIO = 4,        /* file system failure */
    LP_ESINGULAR = 5,  /* lifted parity part not invertible */
    LP_EINFEASIBLE = 6,/* search cannot proceed */
    LP_EINTERNAL = 7
} lp_status;

const char* lp_status_str(lp_status status);

/* Message describing the most recent failure on this thread. */
const char* lp_last_error(void);

const char* lp_version(void);

/* ------------------------------------------------------------------ */
/* Base matrices                                                       */

typedef struct lp_matrix lp_matrix;

/* Text format: header "n m Z", then m rows of n shifts in [-1, Z-1];
 * '#' starts a comment line. */
lp_status lp_matrix_parse(const char* text, lp_matrix** out);
lp_status lp_matrix_load(const char* path, lp_matrix** out);
void lp_matrix_free(lp_matrix* bm);

int lp_matrix_cols(const lp_matrix* bm);      /* n */
int lp_matrix_rows(const lp_matrix* bm);      /* m */
int lp_matrix_lift(const lp_matrix* bm);      /* Z */
int lp_matrix_info_cols(const lp_matrix* bm); /* k = n - m */
/* Shift at (row, col), 0-based; -1 is the zero block. */
int lp_matrix_entry(const lp_matrix* bm, int row, int col);

/* Serialize back to the text format. Free with lp_string_free. */
lp_status lp_matrix_to_text(const lp_matrix* bm, char** out);

/* Shifts for another lifting factor: h -> floor(h*z/Z) (802.16e rule). */
lp_status lp_matrix_rescale(const lp_matrix* bm, int z, lp_matrix** out);

/* Remove 1-based columns; fails if a check would lose all its edges. */
lp_status lp_matrix_erase_columns(const lp_matrix* bm, const int* cols, int count,
                                  lp_matrix** out);

/* Lift to the binary parity-check matrix, encoded as MacKay alist text. */
lp_status lp_matrix_lift_alist(const lp_matrix* bm, char** out);

void lp_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Pruning patterns                                                    */

typedef struct lp_pattern lp_pattern;

lp_status lp_pattern_create(const int* shorten, int shorten_count, const int* puncture,
                            int puncture_count, lp_pattern** out);
/* JSON object {"shorten": [...], "puncture": [...]}; order is significant. */
lp_status lp_pattern_parse_json(const char* text, lp_pattern** out);
lp_status lp_pattern_load(const char* path, lp_pattern** out);
lp_status lp_pattern_to_json(const lp_pattern* pattern, char** out);
void lp_pattern_free(lp_pattern* pattern);

int lp_pattern_shorten_count(const lp_pattern* pattern);
int lp_pattern_puncture_count(const lp_pattern* pattern);
int lp_pattern_shorten_at(const lp_pattern* pattern, int index);
int lp_pattern_puncture_at(const lp_pattern* pattern, int index);

/* Prefix sub-pattern: first alpha shorten and beta puncture indices. */
lp_status lp_pattern_prefix(const lp_pattern* pattern, int alpha, int beta, lp_pattern** out);

/* Check all pattern invariants against a matrix. */
lp_status lp_pattern_validate(const lp_pattern* pattern, const lp_matrix* bm);

/* ------------------------------------------------------------------ */
/* PEXIT thresholds                                                    */

typedef struct lp_threshold_opts {
    double epsilon;          /* convergence target on 1 - I_APP (default 1e-4) */
    int max_iterations;      /* MI iteration cap (default 1000) */
    double bracket_lo_db;    /* bisection bracket (default [-2, 12]) */
    double bracket_hi_db;
    double bracket_tol_db;   /* final bracket width (default 0.001) */
    int rate_num;            /* E_b/N_0 rate override; 0/0 = pruned rate */
    int rate_den;
} lp_threshold_opts;

void lp_threshold_opts_init(lp_threshold_opts* opts);

typedef struct lp_threshold_result {
    double threshold_db;     /* +inf if nothing converges in the bracket */
    int iterations;          /* MI iterations used at the threshold */
    double rate;             /* rate used for the E_b/N_0 conversion */
    int converged;           /* 0 => threshold_db is +inf */
} lp_threshold_result;

/* PEXIT decoding threshold of `bm` pruned by `pattern` (NULL = unpruned).
 * Shortened columns are erased, punctured columns get zero channel MI.
 * Fails with LP_ERANGE if the recursion already converges at the lower
 * bracket end. */
lp_status lp_threshold(const lp_matrix* bm, const lp_pattern* pattern,
                       const lp_threshold_opts* opts, lp_threshold_result* out);

/* ------------------------------------------------------------------ */
/* Pattern search                                                      */

typedef struct lp_search lp_search;

/* T-stage non-greedy beam search: each stage extends every surviving
 * pattern by one (shorten, puncture) pair and keeps the `beam` best
 * thresholds. threads <= 0 resolves LDPC_PRUNE_THREADS / hardware. */
lp_status lp_optimize(const lp_matrix* bm, int stages, int beam, int threads, lp_search** out);

int lp_search_count(const lp_search* search); /* surviving final patterns */
double lp_search_threshold(const lp_search* search, int rank); /* rank 0 = best */
lp_status lp_search_pattern(const lp_search* search, int rank, lp_pattern** out);
/* CSV: stage,rank,s,p,threshold_db,parent_rank */
lp_status lp_search_stage_log(const lp_search* search, char** out);
void lp_search_free(lp_search* search);

/* ------------------------------------------------------------------ */
/* Monte Carlo simulation                                              */

typedef struct lp_sim lp_sim;

typedef struct lp_sim_opts {
    int64_t ns_bits;          /* shortened bits; -1 = alpha * Z */
    int64_t np_bits;          /* punctured bits; -1 = beta * Z */
    int alpha;                /* used when ns_bits/np_bits are -1 */
    int beta;
    double snr_start_db;
    double snr_step_db;
    double snr_stop_db;
    uint64_t seed;
    uint64_t max_frames;
    uint64_t min_frame_errors;
    int max_bp_iterations;    /* default 100 */
    int threads;              /* <= 0: LDPC_PRUNE_THREADS / hardware */
    int noiseless;            /* diagnostic: no channel noise */
} lp_sim_opts;

void lp_sim_opts_init(lp_sim_opts* opts);

typedef struct lp_sim_point {
    double ebno_db;
    uint64_t frames;
    uint64_t bit_errors;
    uint64_t frame_errors;
    double ber;
    double fer;
    double seconds;
} lp_sim_point;

/* BPSK/AWGN Monte Carlo of `bm` pruned by `pattern` (NULL = unpruned).
 * Shortened bits are known zeros (saturated LLR), punctured bits are not
 * transmitted (zero LLR); errors are counted on unknown information bits.
 * Deterministic for a fixed seed, independent of the thread count. */
lp_status lp_simulate(const lp_matrix* bm, const lp_pattern* pattern, const lp_sim_opts* opts,
                      lp_sim** out);

int lp_sim_count(const lp_sim* sim);
lp_status lp_sim_point_at(const lp_sim* sim, int index, lp_sim_point* out);
void lp_sim_free(lp_sim* sim);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LDPC_PRUNE_H */
