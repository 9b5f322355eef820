/*
 * C interface to the latent simplex position (LSP) multi-view clustering
 * library. Objects are opaque handles created by lsp_*_create/run/read/load
 * functions and released by the matching lsp_*_destroy. Every fallible call
 * returns an lsp_status; on failure lsp_last_error() describes the problem
 * (thread-local, valid until the next failing call on the same thread).
 *
 * Indices are 0-based throughout. Label and index buffers are caller-owned.
 */
#ifndef LSP_LSP_H
#define LSP_LSP_H

#include <stddef.h>
#include <stdint.h>

#if defined(LSP_BUILDING_LIBRARY)
#define LSP_API __attribute__((visibility("default")))
#else
#define LSP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lsp_status {
    LSP_OK = 0,
    LSP_ERR_INVALID_ARGUMENT = 1,
    LSP_ERR_IO = 2,
    LSP_ERR_NUMERIC = 3,
    LSP_ERR_OUT_OF_RANGE = 4,
    LSP_ERR_INTERNAL = 99
} lsp_status;

LSP_API const char* lsp_last_error(void);
LSP_API const char* lsp_status_name(lsp_status status);
LSP_API const char* lsp_version(void);

/* ---------------------------------------------------------------- matrix */

/* Dense row-major copy semantics at the boundary. */
typedef struct lsp_matrix lsp_matrix;

LSP_API lsp_status lsp_matrix_create(size_t rows, size_t cols, const double* row_major, lsp_matrix** out);
LSP_API void lsp_matrix_destroy(lsp_matrix* m);
LSP_API size_t lsp_matrix_rows(const lsp_matrix* m);
LSP_API size_t lsp_matrix_cols(const lsp_matrix* m);
LSP_API double lsp_matrix_get(const lsp_matrix* m, size_t row, size_t col);
/* Copies rows*cols values in row-major order into `out`. */
LSP_API lsp_status lsp_matrix_copy_to(const lsp_matrix* m, double* out, size_t capacity);
/* Column subset in the given order. */
LSP_API lsp_status lsp_matrix_select_columns(const lsp_matrix* m, const size_t* columns, size_t count,
                                             lsp_matrix** out);

/* A header row is detected when any of its fields is non-numeric. */
LSP_API lsp_status lsp_matrix_read_csv(const char* path, lsp_matrix** out);
/* 17 significant digits; `header` may be NULL (count ignored). */
LSP_API lsp_status lsp_matrix_write_csv(const lsp_matrix* m, const char* path, const char* const* header,
                                        size_t header_count);

/* Integer label columns: labels[c * rows + r]; written with `offset` added. */
LSP_API lsp_status lsp_labels_write_csv(const char* path, const int32_t* labels, size_t rows, size_t columns,
                                        const char* const* header, int32_t offset);
/* Reads one column of integer labels (header optional) into a new buffer
 * released with lsp_labels_free. */
LSP_API lsp_status lsp_labels_read_csv(const char* path, size_t column, int32_t** labels, size_t* count);
LSP_API void lsp_labels_free(int32_t* labels);

/* ------------------------------------------------------------ similarity */

typedef struct lsp_similarity_options {
    double quantile; /* row quantile of distances for local bandwidths, (0,1) */
    double s_min;
    double s_max;
} lsp_similarity_options;

LSP_API void lsp_similarity_options_default(lsp_similarity_options* options);

typedef struct lsp_similarity lsp_similarity;

/* View v uses data columns [starts[v], starts[v] + widths[v]). With both
 * arrays NULL every column is its own view. */
LSP_API lsp_status lsp_similarity_build(const lsp_matrix* data, const size_t* starts, const size_t* widths,
                                        size_t views, const lsp_similarity_options* options,
                                        lsp_similarity** out);
LSP_API void lsp_similarity_destroy(lsp_similarity* s);
LSP_API size_t lsp_similarity_views(const lsp_similarity* s);
LSP_API size_t lsp_similarity_items(const lsp_similarity* s);
LSP_API lsp_status lsp_similarity_view(const lsp_similarity* s, size_t view, lsp_matrix** out);

/* ------------------------------------------------------------------- fit */

typedef struct lsp_fit_options {
    int32_t d;
    int32_t g;
    double alpha_lambda;       /* <= 0 selects 1/d */
    double epsilon;
    double reg_multiplier;     /* < 0 selects n */
    double smoothing;
    double step_size;
    double beta1;
    double beta2;
    double stability;
    int32_t inner_iterations;
    int32_t convergence_window;
    double convergence_tolerance;
    int32_t max_em_iterations;
    int32_t restarts;
    double init_logit_scale;
    uint64_t seed;
} lsp_fit_options;

LSP_API void lsp_fit_options_default(lsp_fit_options* options);

typedef struct lsp_fit lsp_fit;

LSP_API lsp_status lsp_fit_run(const lsp_similarity* s, const lsp_fit_options* options, lsp_fit** out);
LSP_API lsp_status lsp_fit_load(const char* path, lsp_fit** out);
LSP_API lsp_status lsp_fit_save(const lsp_fit* fit, const char* path);
LSP_API void lsp_fit_destroy(lsp_fit* fit);

LSP_API size_t lsp_fit_items(const lsp_fit* fit);
LSP_API size_t lsp_fit_views(const lsp_fit* fit);
LSP_API int32_t lsp_fit_d(const lsp_fit* fit);
LSP_API int32_t lsp_fit_g(const lsp_fit* fit);
LSP_API int32_t lsp_fit_iterations(const lsp_fit* fit);
LSP_API int32_t lsp_fit_converged(const lsp_fit* fit);
LSP_API int32_t lsp_fit_restart(const lsp_fit* fit);
LSP_API size_t lsp_fit_history_length(const lsp_fit* fit);
LSP_API lsp_status lsp_fit_history(const lsp_fit* fit, double* out, size_t capacity);
LSP_API lsp_status lsp_fit_lambda(const lsp_fit* fit, double* out, size_t capacity);
/* Initial K-means parameterization labels, one per view. */
LSP_API lsp_status lsp_fit_init_assignment(const lsp_fit* fit, int32_t* out, size_t capacity);
/* V x d responsibilities. */
LSP_API lsp_status lsp_fit_eta(const lsp_fit* fit, lsp_matrix** out);
/* n x g simplex weights of parameterization l. */
LSP_API lsp_status lsp_fit_weights(const lsp_fit* fit, int32_t l, lsp_matrix** out);
/* Direct evaluation of the regularized loss against a similarity tensor. */
LSP_API lsp_status lsp_fit_reg_loss(const lsp_fit* fit, const lsp_similarity* s, double* out);

/* ------------------------------------------------------------ estimates */

typedef struct lsp_estimate lsp_estimate;

LSP_API lsp_status lsp_estimate_run(const lsp_fit* fit, uint64_t seed, lsp_estimate** out);
LSP_API void lsp_estimate_destroy(lsp_estimate* e);

LSP_API int32_t lsp_estimate_d_hat(const lsp_estimate* e);
LSP_API int32_t lsp_estimate_x_hat(const lsp_estimate* e, size_t view);
LSP_API int32_t lsp_estimate_g_hat(const lsp_estimate* e, size_t view);
LSP_API lsp_status lsp_estimate_pointwise_labels(const lsp_estimate* e, size_t view, int32_t* out, size_t capacity);
LSP_API lsp_status lsp_estimate_joint_labels(const lsp_estimate* e, size_t view, int32_t* out, size_t capacity);
/* Co-assignment matrix of parameterization l. */
LSP_API lsp_status lsp_estimate_coassignment(const lsp_estimate* e, int32_t l, lsp_matrix** out);
LSP_API lsp_status lsp_estimate_consensus(const lsp_estimate* e, lsp_matrix** out);
LSP_API lsp_status lsp_estimate_consensus_weights(const lsp_estimate* e, double* out, size_t capacity);
LSP_API int32_t lsp_estimate_consensus_fallback(const lsp_estimate* e);

/* --------------------------------------------------------------- metrics */

LSP_API lsp_status lsp_nmi(const int32_t* a, const int32_t* b, size_t n, double* out);
LSP_API lsp_status lsp_mad(const lsp_matrix* a, const lsp_matrix* b, double* out);
LSP_API lsp_status lsp_spectral_labels(const lsp_matrix* p, int32_t clusters, uint64_t seed, int32_t* out,
                                       size_t capacity);

/* -------------------------------------------------------------- datagen */

/* setting is one of 'a'..'f'. labels receives n values. */
LSP_API lsp_status lsp_simulate_single_view(char setting, size_t n, uint64_t seed, lsp_matrix** data,
                                            int32_t* labels, size_t capacity);
/* Oracle co-assignment of a single-view setting evaluated at the data rows. */
LSP_API lsp_status lsp_oracle_coassignment(char setting, const lsp_matrix* data, lsp_matrix** out);

typedef struct lsp_multiview_options {
    size_t n;
    size_t views;
    int32_t patterns;
    int32_t clusters;          /* at most 3 with the default emission means */
    double dirichlet_alpha;
    uint64_t seed;
} lsp_multiview_options;

LSP_API void lsp_multiview_options_default(lsp_multiview_options* options);

/* data: n x 2V; pattern: V values; labels: n*V values, view-major (labels[v*n + i]). */
LSP_API lsp_status lsp_simulate_multi_view(const lsp_multiview_options* options, lsp_matrix** data,
                                           int32_t* pattern, size_t pattern_capacity, int32_t* labels,
                                           size_t labels_capacity);

/* data: n x 10; labels: n*10 view-major; structured: 10 flags. */
LSP_API lsp_status lsp_simulate_consensus(size_t n, uint64_t seed, lsp_matrix** data, int32_t* labels,
                                          size_t labels_capacity, int32_t* structured, size_t structured_capacity);

/* Top `top_v` columns by sd/median; writes top_v indices. */
LSP_API lsp_status lsp_screen_columns(const lsp_matrix* data, size_t top_v, size_t* out, size_t capacity);

/* ------------------------------------------------------ bound verification */

typedef struct lsp_bound_options {
    size_t n;
    int32_t views;
    double delta;
    int32_t replications;
    int32_t risk_samples;
    int32_t generalization_draws;
    double truth_within;
    double truth_between;
    double model_within;
    double model_between;
    double similarity_mix;
    uint64_t seed;
} lsp_bound_options;

LSP_API void lsp_bound_options_default(lsp_bound_options* options);

typedef struct lsp_bound_report lsp_bound_report;

typedef struct lsp_bound_summary {
    int32_t evaluated;
    int32_t skipped;
    int32_t holds;
    double holds_fraction;
    double mean_lhs;
    double mean_rhs;
} lsp_bound_summary;

typedef struct lsp_bound_record {
    int32_t index;
    double empirical_risk;
    double generalization_risk;
    double kl_sum;
    double lhs;
    double rhs;
    int32_t holds;
    int32_t skipped;
} lsp_bound_record;

LSP_API lsp_status lsp_bound_verify(const lsp_bound_options* options, lsp_bound_report** out);
LSP_API void lsp_bound_report_destroy(lsp_bound_report* r);
LSP_API lsp_status lsp_bound_report_summary(const lsp_bound_report* r, lsp_bound_summary* out);
LSP_API size_t lsp_bound_report_records(const lsp_bound_report* r);
LSP_API lsp_status lsp_bound_report_record(const lsp_bound_report* r, size_t index, lsp_bound_record* out);
LSP_API lsp_status lsp_bound_rhs(const lsp_matrix* p, const lsp_matrix* const* similarities, size_t count,
                                 int32_t m, double delta, double* out);

#ifdef __cplusplus
}
#endif

#endif /* LSP_LSP_H */
