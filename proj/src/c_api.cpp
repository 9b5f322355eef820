#include "lsp/lsp.h"

#include "lsp/datagen.hpp"
#include "lsp/io.hpp"
#include "lsp/metrics.hpp"
#include "lsp/model.hpp"
#include "lsp/partition.hpp"
#include "lsp/postprocess.hpp"
#include "lsp/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct lsp_matrix {
    lsp::Matrix m;
};

struct lsp_similarity {
    lsp::SimilarityTensor s;
};

struct lsp_fit {
    lsp::FitState state;
};

struct lsp_estimate {
    lsp::FitEstimate e;
};

struct lsp_bound_report {
    lsp::BoundReport r;
};

namespace {

thread_local std::string g_last_error;

lsp_status fail(lsp_status status, const char* message)
{
    g_last_error = message;
    return status;
}

template <class F>
lsp_status guarded(F&& f)
{
    try {
        f();
        return LSP_OK;
    } catch (const std::invalid_argument& e) {
        return fail(LSP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(LSP_ERR_OUT_OF_RANGE, e.what());
    } catch (const lsp::IoError& e) {
        return fail(LSP_ERR_IO, e.what());
    } catch (const lsp::NumericError& e) {
        return fail(LSP_ERR_NUMERIC, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LSP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LSP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LSP_ERR_INTERNAL, "unknown error");
    }
}

void require(bool condition, const char* message)
{
    if (!condition)
        throw std::invalid_argument(message);
}

void require_capacity(size_t capacity, size_t needed)
{
    if (capacity < needed)
        throw std::out_of_range("output buffer too small: need " + std::to_string(needed) + ", got " +
                                std::to_string(capacity));
}

void copy_labels(const lsp::Labels& labels, int32_t* out, size_t capacity)
{
    require(out != nullptr, "null output buffer");
    require_capacity(capacity, labels.size());
    for (size_t i = 0; i < labels.size(); ++i)
        out[i] = labels[i];
}

lsp::Labels to_labels(const int32_t* data, size_t n)
{
    return lsp::Labels(data, data + n);
}

std::vector<std::string> to_header(const char* const* header, size_t count)
{
    std::vector<std::string> out;
    if (header)
        for (size_t i = 0; i < count; ++i)
            out.emplace_back(header[i] ? header[i] : "");
    return out;
}

lsp::ModelConfig to_config(const lsp_fit_options& o)
{
    lsp::ModelConfig c;
    c.d = o.d;
    c.g = o.g;
    if (o.alpha_lambda > 0.0)
        c.alpha_lambda = o.alpha_lambda;
    c.epsilon = o.epsilon;
    if (o.reg_multiplier >= 0.0)
        c.reg_multiplier = o.reg_multiplier;
    c.smoothing = o.smoothing;
    c.adam.step_size = o.step_size;
    c.adam.beta1 = o.beta1;
    c.adam.beta2 = o.beta2;
    c.adam.stability = o.stability;
    c.adam.inner_iterations = o.inner_iterations;
    c.convergence_window = o.convergence_window;
    c.convergence_tolerance = o.convergence_tolerance;
    c.max_em_iterations = o.max_em_iterations;
    c.restarts = o.restarts;
    c.init_logit_scale = o.init_logit_scale;
    c.seed = o.seed;
    return c;
}

lsp::BoundOptions to_bound(const lsp_bound_options& o)
{
    lsp::BoundOptions b;
    b.n = static_cast<Eigen::Index>(o.n);
    b.views = o.views;
    b.delta = o.delta;
    b.replications = o.replications;
    b.risk_samples = o.risk_samples;
    b.generalization_draws = o.generalization_draws;
    b.truth_within = o.truth_within;
    b.truth_between = o.truth_between;
    b.model_within = o.model_within;
    b.model_between = o.model_between;
    b.similarity_mix = o.similarity_mix;
    b.seed = o.seed;
    return b;
}

lsp_matrix* wrap(lsp::Matrix m)
{
    return new lsp_matrix{std::move(m)};
}

} // namespace

extern "C" {

const char* lsp_last_error(void)
{
    return g_last_error.c_str();
}

const char* lsp_status_name(lsp_status status)
{
    switch (status) {
    case LSP_OK: return "ok";
    case LSP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LSP_ERR_IO: return "i/o error";
    case LSP_ERR_NUMERIC: return "numeric error";
    case LSP_ERR_OUT_OF_RANGE: return "out of range";
    case LSP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* lsp_version(void)
{
    return "1.0.0";
}

lsp_status lsp_matrix_create(size_t rows, size_t cols, const double* row_major, lsp_matrix** out)
{
    return guarded([&] {
        require(out != nullptr, "null output handle");
        lsp::Matrix m = lsp::Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        if (row_major)
            for (size_t i = 0; i < rows; ++i)
                for (size_t j = 0; j < cols; ++j)
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row_major[i * cols + j];
        *out = wrap(std::move(m));
    });
}

void lsp_matrix_destroy(lsp_matrix* m)
{
    delete m;
}

size_t lsp_matrix_rows(const lsp_matrix* m)
{
    return m ? static_cast<size_t>(m->m.rows()) : 0;
}

size_t lsp_matrix_cols(const lsp_matrix* m)
{
    return m ? static_cast<size_t>(m->m.cols()) : 0;
}

double lsp_matrix_get(const lsp_matrix* m, size_t row, size_t col)
{
    return m->m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

lsp_status lsp_matrix_copy_to(const lsp_matrix* m, double* out, size_t capacity)
{
    return guarded([&] {
        require(m && out, "null argument");
        const auto rows = static_cast<size_t>(m->m.rows());
        const auto cols = static_cast<size_t>(m->m.cols());
        require_capacity(capacity, rows * cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                out[i * cols + j] = m->m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    });
}

lsp_status lsp_matrix_select_columns(const lsp_matrix* m, const size_t* columns, size_t count, lsp_matrix** out)
{
    return guarded([&] {
        require(m && out && (columns || count == 0), "null argument");
        lsp::Matrix sel(m->m.rows(), static_cast<Eigen::Index>(count));
        for (size_t c = 0; c < count; ++c) {
            if (columns[c] >= static_cast<size_t>(m->m.cols()))
                throw std::out_of_range("column index " + std::to_string(columns[c]) + " out of range");
            sel.col(static_cast<Eigen::Index>(c)) = m->m.col(static_cast<Eigen::Index>(columns[c]));
        }
        *out = wrap(std::move(sel));
    });
}

lsp_status lsp_matrix_read_csv(const char* path, lsp_matrix** out)
{
    return guarded([&] {
        require(path && out, "null argument");
        *out = wrap(lsp::read_csv(path).values);
    });
}

lsp_status lsp_matrix_write_csv(const lsp_matrix* m, const char* path, const char* const* header,
                                size_t header_count)
{
    return guarded([&] {
        require(m && path, "null argument");
        lsp::write_csv(path, m->m, to_header(header, header_count));
    });
}

lsp_status lsp_labels_write_csv(const char* path, const int32_t* labels, size_t rows, size_t columns,
                                const char* const* header, int32_t offset)
{
    return guarded([&] {
        require(path && (labels || rows * columns == 0), "null argument");
        std::vector<lsp::Labels> cols;
        for (size_t c = 0; c < columns; ++c)
            cols.push_back(to_labels(labels + c * rows, rows));
        lsp::write_labels_csv(path, cols, to_header(header, header ? columns : 0), offset);
    });
}

lsp_status lsp_labels_read_csv(const char* path, size_t column, int32_t** labels, size_t* count)
{
    return guarded([&] {
        require(path && labels && count, "null argument");
        const auto table = lsp::read_csv(path);
        if (column >= static_cast<size_t>(table.values.cols()))
            throw std::out_of_range(std::string(path) + ": label column " + std::to_string(column) +
                                    " out of range");
        const auto n = static_cast<size_t>(table.values.rows());
        auto* buf = static_cast<int32_t*>(std::malloc(std::max<size_t>(n, 1) * sizeof(int32_t)));
        if (!buf)
            throw std::bad_alloc();
        for (size_t i = 0; i < n; ++i) {
            const double x = table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(column));
            if (x != std::floor(x)) {
                std::free(buf);
                throw lsp::IoError(std::string(path) + ": non-integer label at row " + std::to_string(i + 1));
            }
            buf[i] = static_cast<int32_t>(x);
        }
        *labels = buf;
        *count = n;
    });
}

void lsp_labels_free(int32_t* labels)
{
    std::free(labels);
}

void lsp_similarity_options_default(lsp_similarity_options* options)
{
    if (!options)
        return;
    const lsp::SimilarityOptions d;
    options->quantile = d.quantile;
    options->s_min = d.s_min;
    options->s_max = d.s_max;
}

lsp_status lsp_similarity_build(const lsp_matrix* data, const size_t* starts, const size_t* widths, size_t views,
                                const lsp_similarity_options* options, lsp_similarity** out)
{
    return guarded([&] {
        require(data && out, "null argument");
        require((starts == nullptr) == (widths == nullptr), "starts and widths must both be given or both be null");
        std::vector<lsp::ColumnRange> ranges;
        if (starts) {
            for (size_t v = 0; v < views; ++v)
                ranges.push_back({starts[v], widths[v]});
        } else {
            ranges = lsp::one_column_per_view(static_cast<size_t>(data->m.cols()));
        }
        lsp::SimilarityOptions opts;
        if (options) {
            opts.quantile = options->quantile;
            opts.s_min = options->s_min;
            opts.s_max = options->s_max;
        }
        *out = new lsp_similarity{lsp::SimilarityTensor::build(lsp::split_views(data->m, ranges), opts)};
    });
}

void lsp_similarity_destroy(lsp_similarity* s)
{
    delete s;
}

size_t lsp_similarity_views(const lsp_similarity* s)
{
    return s ? s->s.views() : 0;
}

size_t lsp_similarity_items(const lsp_similarity* s)
{
    return s ? static_cast<size_t>(s->s.items()) : 0;
}

lsp_status lsp_similarity_view(const lsp_similarity* s, size_t view, lsp_matrix** out)
{
    return guarded([&] {
        require(s && out, "null argument");
        if (view >= s->s.views())
            throw std::out_of_range("view index out of range");
        *out = wrap(s->s[view]);
    });
}

void lsp_fit_options_default(lsp_fit_options* o)
{
    if (!o)
        return;
    const lsp::ModelConfig c;
    o->d = c.d;
    o->g = c.g;
    o->alpha_lambda = 0.0;
    o->epsilon = c.epsilon;
    o->reg_multiplier = -1.0;
    o->smoothing = c.smoothing;
    o->step_size = c.adam.step_size;
    o->beta1 = c.adam.beta1;
    o->beta2 = c.adam.beta2;
    o->stability = c.adam.stability;
    o->inner_iterations = c.adam.inner_iterations;
    o->convergence_window = c.convergence_window;
    o->convergence_tolerance = c.convergence_tolerance;
    o->max_em_iterations = c.max_em_iterations;
    o->restarts = c.restarts;
    o->init_logit_scale = c.init_logit_scale;
    o->seed = c.seed;
}

lsp_status lsp_fit_run(const lsp_similarity* s, const lsp_fit_options* options, lsp_fit** out)
{
    return guarded([&] {
        require(s && options && out, "null argument");
        *out = new lsp_fit{lsp::fit(s->s, to_config(*options))};
    });
}

lsp_status lsp_fit_load(const char* path, lsp_fit** out)
{
    return guarded([&] {
        require(path && out, "null argument");
        *out = new lsp_fit{lsp::load_fit_state(path)};
    });
}

lsp_status lsp_fit_save(const lsp_fit* fit, const char* path)
{
    return guarded([&] {
        require(fit && path, "null argument");
        lsp::save_fit_state(path, fit->state);
    });
}

void lsp_fit_destroy(lsp_fit* fit)
{
    delete fit;
}

size_t lsp_fit_items(const lsp_fit* fit)
{
    return fit ? static_cast<size_t>(fit->state.items()) : 0;
}

size_t lsp_fit_views(const lsp_fit* fit)
{
    return fit ? fit->state.views() : 0;
}

int32_t lsp_fit_d(const lsp_fit* fit)
{
    return fit ? fit->state.config.d : 0;
}

int32_t lsp_fit_g(const lsp_fit* fit)
{
    return fit ? fit->state.config.g : 0;
}

int32_t lsp_fit_iterations(const lsp_fit* fit)
{
    return fit ? fit->state.iterations : 0;
}

int32_t lsp_fit_converged(const lsp_fit* fit)
{
    return fit && fit->state.converged ? 1 : 0;
}

int32_t lsp_fit_restart(const lsp_fit* fit)
{
    return fit ? fit->state.restart : 0;
}

size_t lsp_fit_history_length(const lsp_fit* fit)
{
    return fit ? fit->state.loss_history.size() : 0;
}

lsp_status lsp_fit_history(const lsp_fit* fit, double* out, size_t capacity)
{
    return guarded([&] {
        require(fit && out, "null argument");
        const auto& h = fit->state.loss_history;
        require_capacity(capacity, h.size());
        std::copy(h.begin(), h.end(), out);
    });
}

lsp_status lsp_fit_lambda(const lsp_fit* fit, double* out, size_t capacity)
{
    return guarded([&] {
        require(fit && out, "null argument");
        const auto& l = fit->state.lambda.values;
        require_capacity(capacity, static_cast<size_t>(l.size()));
        for (Eigen::Index i = 0; i < l.size(); ++i)
            out[i] = l[i];
    });
}

lsp_status lsp_fit_init_assignment(const lsp_fit* fit, int32_t* out, size_t capacity)
{
    return guarded([&] {
        require(fit != nullptr, "null argument");
        copy_labels(fit->state.init_assignment, out, capacity);
    });
}

lsp_status lsp_fit_eta(const lsp_fit* fit, lsp_matrix** out)
{
    return guarded([&] {
        require(fit && out, "null argument");
        *out = wrap(fit->state.eta.values);
    });
}

lsp_status lsp_fit_weights(const lsp_fit* fit, int32_t l, lsp_matrix** out)
{
    return guarded([&] {
        require(fit && out, "null argument");
        if (l < 0 || static_cast<size_t>(l) >= fit->state.components.size())
            throw std::out_of_range("parameterization index out of range");
        *out = wrap(fit->state.components[static_cast<size_t>(l)].weights());
    });
}

lsp_status lsp_fit_reg_loss(const lsp_fit* fit, const lsp_similarity* s, double* out)
{
    return guarded([&] {
        require(fit && s && out, "null argument");
        *out = lsp::reg_loss(fit->state, s->s);
    });
}

lsp_status lsp_estimate_run(const lsp_fit* fit, uint64_t seed, lsp_estimate** out)
{
    return guarded([&] {
        require(fit && out, "null argument");
        *out = new lsp_estimate{lsp::estimate(fit->state, seed)};
    });
}

void lsp_estimate_destroy(lsp_estimate* e)
{
    delete e;
}

int32_t lsp_estimate_d_hat(const lsp_estimate* e)
{
    return e ? e->e.d_hat : 0;
}

int32_t lsp_estimate_x_hat(const lsp_estimate* e, size_t view)
{
    return e && view < e->e.views.size() ? e->e.views[view].x_hat : -1;
}

int32_t lsp_estimate_g_hat(const lsp_estimate* e, size_t view)
{
    return e && view < e->e.views.size() ? e->e.views[view].g_hat : -1;
}

lsp_status lsp_estimate_pointwise_labels(const lsp_estimate* e, size_t view, int32_t* out, size_t capacity)
{
    return guarded([&] {
        require(e != nullptr, "null argument");
        if (view >= e->e.views.size())
            throw std::out_of_range("view index out of range");
        copy_labels(e->e.views[view].pointwise_labels, out, capacity);
    });
}

lsp_status lsp_estimate_joint_labels(const lsp_estimate* e, size_t view, int32_t* out, size_t capacity)
{
    return guarded([&] {
        require(e != nullptr, "null argument");
        if (view >= e->e.views.size())
            throw std::out_of_range("view index out of range");
        copy_labels(e->e.views[view].joint_labels, out, capacity);
    });
}

lsp_status lsp_estimate_coassignment(const lsp_estimate* e, int32_t l, lsp_matrix** out)
{
    return guarded([&] {
        require(e && out, "null argument");
        if (l < 0 || static_cast<size_t>(l) >= e->e.p_hat.size())
            throw std::out_of_range("parameterization index out of range");
        *out = wrap(e->e.p_hat[static_cast<size_t>(l)]);
    });
}

lsp_status lsp_estimate_consensus(const lsp_estimate* e, lsp_matrix** out)
{
    return guarded([&] {
        require(e && out, "null argument");
        *out = wrap(e->e.consensus.matrix);
    });
}

lsp_status lsp_estimate_consensus_weights(const lsp_estimate* e, double* out, size_t capacity)
{
    return guarded([&] {
        require(e && out, "null argument");
        const auto& u = e->e.consensus.weights;
        require_capacity(capacity, static_cast<size_t>(u.size()));
        for (Eigen::Index i = 0; i < u.size(); ++i)
            out[i] = u[i];
    });
}

int32_t lsp_estimate_consensus_fallback(const lsp_estimate* e)
{
    return e && e->e.consensus.fallback ? 1 : 0;
}

lsp_status lsp_nmi(const int32_t* a, const int32_t* b, size_t n, double* out)
{
    return guarded([&] {
        require(a && b && out, "null argument");
        *out = lsp::nmi(to_labels(a, n), to_labels(b, n));
    });
}

lsp_status lsp_mad(const lsp_matrix* a, const lsp_matrix* b, double* out)
{
    return guarded([&] {
        require(a && b && out, "null argument");
        *out = lsp::mad(a->m, b->m);
    });
}

lsp_status lsp_spectral_labels(const lsp_matrix* p, int32_t clusters, uint64_t seed, int32_t* out, size_t capacity)
{
    return guarded([&] {
        require(p != nullptr, "null argument");
        copy_labels(lsp::spectral_labels(p->m, clusters, seed), out, capacity);
    });
}

lsp_status lsp_simulate_single_view(char setting, size_t n, uint64_t seed, lsp_matrix** data, int32_t* labels,
                                    size_t capacity)
{
    return guarded([&] {
        require(data != nullptr, "null argument");
        auto d = lsp::single_view(lsp::parse_setting(std::string(1, setting)), static_cast<Eigen::Index>(n), seed);
        if (labels)
            copy_labels(d.labels, labels, capacity);
        *data = wrap(std::move(d.data));
    });
}

lsp_status lsp_oracle_coassignment(char setting, const lsp_matrix* data, lsp_matrix** out)
{
    return guarded([&] {
        require(data && out, "null argument");
        const auto mixture = lsp::setting_mixture(lsp::parse_setting(std::string(1, setting)));
        *out = wrap(lsp::oracle_coassignment(mixture, data->m));
    });
}

void lsp_multiview_options_default(lsp_multiview_options* options)
{
    if (!options)
        return;
    const lsp::MultiViewSpec s;
    options->n = static_cast<size_t>(s.n);
    options->views = static_cast<size_t>(s.views);
    options->patterns = s.patterns;
    options->clusters = s.clusters;
    options->dirichlet_alpha = s.dirichlet_alpha;
    options->seed = s.seed;
}

lsp_status lsp_simulate_multi_view(const lsp_multiview_options* options, lsp_matrix** data, int32_t* pattern,
                                   size_t pattern_capacity, int32_t* labels, size_t labels_capacity)
{
    return guarded([&] {
        require(options && data, "null argument");
        lsp::MultiViewSpec spec;
        spec.n = static_cast<Eigen::Index>(options->n);
        spec.views = static_cast<Eigen::Index>(options->views);
        spec.patterns = options->patterns;
        spec.clusters = options->clusters;
        spec.dirichlet_alpha = options->dirichlet_alpha;
        spec.seed = options->seed;
        auto mv = lsp::multi_view(spec);
        if (pattern)
            copy_labels(mv.pattern, pattern, pattern_capacity);
        if (labels) {
            require_capacity(labels_capacity, options->n * options->views);
            for (size_t v = 0; v < mv.labels.size(); ++v)
                for (size_t i = 0; i < options->n; ++i)
                    labels[v * options->n + i] = mv.labels[v][i];
        }
        *data = wrap(std::move(mv.data));
    });
}

lsp_status lsp_simulate_consensus(size_t n, uint64_t seed, lsp_matrix** data, int32_t* labels,
                                  size_t labels_capacity, int32_t* structured, size_t structured_capacity)
{
    return guarded([&] {
        require(data != nullptr, "null argument");
        auto cv = lsp::consensus_views(static_cast<Eigen::Index>(n), seed);
        if (labels) {
            require_capacity(labels_capacity, n * cv.labels.size());
            for (size_t v = 0; v < cv.labels.size(); ++v)
                for (size_t i = 0; i < n; ++i)
                    labels[v * n + i] = cv.labels[v][i];
        }
        if (structured) {
            require_capacity(structured_capacity, cv.structured.size());
            for (size_t v = 0; v < cv.structured.size(); ++v)
                structured[v] = cv.structured[v] ? 1 : 0;
        }
        *data = wrap(std::move(cv.data));
    });
}

lsp_status lsp_screen_columns(const lsp_matrix* data, size_t top_v, size_t* out, size_t capacity)
{
    return guarded([&] {
        require(data && out, "null argument");
        const auto cols = lsp::screen_columns(data->m, top_v);
        require_capacity(capacity, cols.size());
        std::copy(cols.begin(), cols.end(), out);
    });
}

void lsp_bound_options_default(lsp_bound_options* o)
{
    if (!o)
        return;
    const lsp::BoundOptions b;
    o->n = static_cast<size_t>(b.n);
    o->views = b.views;
    o->delta = b.delta;
    o->replications = b.replications;
    o->risk_samples = b.risk_samples;
    o->generalization_draws = b.generalization_draws;
    o->truth_within = b.truth_within;
    o->truth_between = b.truth_between;
    o->model_within = b.model_within;
    o->model_between = b.model_between;
    o->similarity_mix = b.similarity_mix;
    o->seed = b.seed;
}

lsp_status lsp_bound_verify(const lsp_bound_options* options, lsp_bound_report** out)
{
    return guarded([&] {
        require(options && out, "null argument");
        *out = new lsp_bound_report{lsp::verify_theorem(to_bound(*options))};
    });
}

void lsp_bound_report_destroy(lsp_bound_report* r)
{
    delete r;
}

lsp_status lsp_bound_report_summary(const lsp_bound_report* r, lsp_bound_summary* out)
{
    return guarded([&] {
        require(r && out, "null argument");
        out->evaluated = r->r.evaluated;
        out->skipped = r->r.skipped;
        out->holds = r->r.holds;
        out->holds_fraction = r->r.holds_fraction;
        out->mean_lhs = r->r.mean_lhs;
        out->mean_rhs = r->r.mean_rhs;
    });
}

size_t lsp_bound_report_records(const lsp_bound_report* r)
{
    return r ? r->r.records.size() : 0;
}

lsp_status lsp_bound_report_record(const lsp_bound_report* r, size_t index, lsp_bound_record* out)
{
    return guarded([&] {
        require(r && out, "null argument");
        if (index >= r->r.records.size())
            throw std::out_of_range("record index out of range");
        const auto& rec = r->r.records[index];
        out->index = rec.index;
        out->empirical_risk = rec.empirical_risk;
        out->generalization_risk = rec.generalization_risk;
        out->kl_sum = rec.kl_sum;
        out->lhs = rec.lhs;
        out->rhs = rec.rhs;
        out->holds = rec.holds ? 1 : 0;
        out->skipped = rec.skipped ? 1 : 0;
    });
}

lsp_status lsp_bound_rhs(const lsp_matrix* p, const lsp_matrix* const* similarities, size_t count, int32_t m,
                         double delta, double* out)
{
    return guarded([&] {
        require(p && out && (similarities || count == 0), "null argument");
        std::vector<lsp::Matrix> sims;
        for (size_t v = 0; v < count; ++v) {
            require(similarities[v] != nullptr, "null similarity matrix");
            sims.push_back(similarities[v]->m);
        }
        *out = lsp::bound_rhs(p->m, sims, m, delta);
    });
}

} // extern "C"
