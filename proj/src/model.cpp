#include "lsp/model.hpp"

#include "lsp/initialization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lsp {

namespace {

constexpr double kLambdaFloor = 1e-12;
// p is clamped into [kProbClamp, 1 - kProbClamp] before taking its log-odds.
constexpr double kProbClamp = 1e-12;

double component_data_term(const Matrix& w, const Matrix& kappa, double gamma)
{
    const Matrix p = w * w.transpose();
    const Eigen::Index n = p.rows();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double pij = std::min(p(i, j), 1.0);
            acc += kappa(i, j) * pij + gamma * (xlogx(pij) + xlogx(1.0 - pij));
        }
    }
    return acc;
}

// Scratch buffers reused across inner iterations.
struct GradientWorkspace {
    Matrix p;
    Matrix grad_p;
    Matrix wg;
};

void component_gradient(GradientWorkspace& ws, const SimplexWeightMatrix& component, const Matrix& kappa,
                        double gamma, double multiplier, double epsilon, double smoothing, Matrix& out)
{
    const Matrix& w = component.weights();
    const Eigen::Index n = w.rows();
    const Eigen::Index g = w.cols();

    ws.grad_p.resize(n, n);
    if (gamma != 0.0) {
        ws.p.resize(n, n);
        ws.p.noalias() = w * w.transpose();
        for (Eigen::Index j = 0; j < n; ++j) {
            ws.grad_p(j, j) = 0.0;
            for (Eigen::Index i = j + 1; i < n; ++i) {
                const double pc = std::clamp(ws.p(i, j), kProbClamp, 1.0 - kProbClamp);
                ws.grad_p(i, j) = kappa(i, j) + gamma * std::log(pc / (1.0 - pc));
            }
        }
    } else {
        ws.grad_p.triangularView<Eigen::Lower>() = kappa;
        ws.grad_p.diagonal().setZero();
    }

    // w ∘ dL/dw, which is what the normalized-exponential backprop needs.
    ws.wg.resize(n, g);
    ws.wg.noalias() = ws.grad_p.selfadjointView<Eigen::Lower>() * w;
    ws.wg.array() *= w.array();
    if (multiplier != 0.0) {
        for (Eigen::Index k = 0; k < g; ++k) {
            double sq = smoothing;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double a = std::max(0.0, std::log(w(i, k) / epsilon));
                sq += a * a;
            }
            const double norm = std::sqrt(sq);
            if (norm == 0.0)
                continue;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double a = std::max(0.0, std::log(w(i, k) / epsilon));
                ws.wg(i, k) += multiplier * a / norm;
            }
        }
    }
    out.resize(n, g);
    out = ws.wg - w.cwiseProduct(ws.wg.rowwise().sum().replicate(1, g));
}

void gradients_into(std::vector<GradientWorkspace>& ws, const FitState& state, const KappaGamma& kg,
                    std::vector<Matrix>& out)
{
    const ModelConfig& cfg = state.config;
    const double mult = cfg.multiplier(state.items());
    ws.resize(state.components.size());
    out.resize(state.components.size());
    for (std::size_t l = 0; l < state.components.size(); ++l)
        component_gradient(ws[l], state.components[l], kg.kappa[l], kg.gamma[static_cast<Eigen::Index>(l)], mult,
                           cfg.epsilon, cfg.smoothing, out[l]);
}

std::vector<Matrix> coassignments(const FitState& state)
{
    std::vector<Matrix> out;
    out.reserve(state.components.size());
    for (const auto& c : state.components)
        out.push_back(coassignment_matrix(c));
    return out;
}

} // namespace

void ModelConfig::validate() const
{
    if (d < 1)
        throw std::invalid_argument("d must be at least 1");
    if (g < 1)
        throw std::invalid_argument("g must be at least 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (alpha_lambda && !(*alpha_lambda > 0.0))
        throw std::invalid_argument("alpha_lambda must be positive");
    if (reg_multiplier && !(*reg_multiplier >= 0.0))
        throw std::invalid_argument("regularizer multiplier must be nonnegative");
    if (!(smoothing >= 0.0))
        throw std::invalid_argument("smoothing must be nonnegative");
    if (adam.inner_iterations < 1 || !(adam.step_size > 0.0))
        throw std::invalid_argument("optimizer needs a positive step size and at least one inner iteration");
    if (convergence_window < 1 || !(convergence_tolerance >= 0.0))
        throw std::invalid_argument("convergence window must be positive and tolerance nonnegative");
    if (max_em_iterations < 1)
        throw std::invalid_argument("max EM iterations must be positive");
    if (restarts < 1)
        throw std::invalid_argument("at least one restart is required");
    if (!(init_logit_scale >= 0.0))
        throw std::invalid_argument("initial logit scale must be nonnegative");
}

SimplexWeightMatrix::SimplexWeightMatrix(Matrix logits)
{
    set_logits(std::move(logits));
}

SimplexWeightMatrix SimplexWeightMatrix::from_weights(const Matrix& weights)
{
    if ((weights.array() <= 0.0).any())
        throw std::invalid_argument("simplex weights must be positive to take logits");
    return SimplexWeightMatrix(weights.array().log().matrix());
}

void SimplexWeightMatrix::set_logits(Matrix logits)
{
    logits_ = std::move(logits);
    weights_.resize(logits_.rows(), logits_.cols());
    for (Eigen::Index i = 0; i < logits_.rows(); ++i) {
        const double m = logits_.row(i).maxCoeff();
        double total = 0.0;
        for (Eigen::Index k = 0; k < logits_.cols(); ++k) {
            weights_(i, k) = std::exp(logits_(i, k) - m);
            total += weights_(i, k);
        }
        weights_.row(i) /= total;
    }
}

Responsibilities Responsibilities::one_hot(const Labels& assignment, int d)
{
    Matrix eta = Matrix::Zero(static_cast<Eigen::Index>(assignment.size()), d);
    for (std::size_t v = 0; v < assignment.size(); ++v) {
        if (assignment[v] < 0 || assignment[v] >= d)
            throw std::invalid_argument("assignment label out of range");
        eta(static_cast<Eigen::Index>(v), assignment[v]) = 1.0;
    }
    return {eta};
}

double kl_bernoulli(double p, double s)
{
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("kl_bernoulli: s must lie strictly inside (0, 1)");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("kl_bernoulli: p must lie in [0, 1]");
    return xlogx(p) - p * std::log(s) + xlogx(1.0 - p) - (1.0 - p) * std::log1p(-s);
}

Matrix coassignment_matrix(const SimplexWeightMatrix& w)
{
    return w.weights() * w.weights().transpose();
}

double data_fit_loss(const std::vector<Matrix>& p_star, const SimilarityTensor& s, const Responsibilities& eta)
{
    if (eta.values.rows() != static_cast<Eigen::Index>(s.views()) ||
        eta.values.cols() != static_cast<Eigen::Index>(p_star.size()))
        throw std::invalid_argument("data_fit_loss: responsibilities do not match views x components");
    const Eigen::Index n = s.items();
    double total = 0.0;
    for (std::size_t v = 0; v < s.views(); ++v) {
        for (std::size_t l = 0; l < p_star.size(); ++l) {
            const double weight = eta.values(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(l));
            if (weight == 0.0)
                continue;
            double acc = 0.0;
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index i = j + 1; i < n; ++i)
                    acc += kl_bernoulli(std::min(p_star[l](i, j), 1.0), s[v](i, j));
            total += weight * acc;
        }
    }
    return total;
}

double group_regularizer(const SimplexWeightMatrix& w, double epsilon, double smoothing)
{
    const Matrix& weights = w.weights();
    double total = 0.0;
    for (Eigen::Index k = 0; k < weights.cols(); ++k) {
        double sq = smoothing;
        for (Eigen::Index i = 0; i < weights.rows(); ++i) {
            const double a = std::max(0.0, std::log(weights(i, k) / epsilon));
            sq += a * a;
        }
        total += std::sqrt(sq);
    }
    return total - static_cast<double>(weights.cols()) * std::sqrt(smoothing);
}

double dirichlet_penalty(const MixtureWeights& lambda, double alpha)
{
    double total = 0.0;
    for (Eigen::Index l = 0; l < lambda.values.size(); ++l)
        total += (1.0 - alpha) * std::log(std::max(lambda.values[l], kLambdaFloor));
    return total;
}

double reg_loss(const FitState& state, const SimilarityTensor& s)
{
    const ModelConfig& cfg = state.config;
    double reg = 0.0;
    for (const auto& c : state.components)
        reg += group_regularizer(c, cfg.epsilon, cfg.smoothing);
    return data_fit_loss(coassignments(state), s, state.eta) + cfg.multiplier(state.items()) * reg +
           dirichlet_penalty(state.lambda, cfg.alpha());
}

Responsibilities e_step(const FitState& state, const PairStatistics& stats)
{
    const auto d = static_cast<Eigen::Index>(state.components.size());
    const Eigen::Index views = stats.log_odds.rows();
    const PairIndex idx(state.items());
    if (stats.log_odds.cols() != idx.size())
        throw std::invalid_argument("e_step: pair statistics do not match the number of items");
    if ((state.lambda.values.array() <= 0.0).all())
        throw std::invalid_argument("e_step: every mixture weight is zero");

    Matrix p_pairs(idx.size(), d);
    Vector neg_entropy = Vector::Zero(d);
    for (Eigen::Index l = 0; l < d; ++l) {
        const Matrix p = coassignment_matrix(state.components[static_cast<std::size_t>(l)]);
        double acc = 0.0;
        idx.for_each([&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
            const double pij = std::min(p(i, j), 1.0);
            p_pairs(k, l) = pij;
            acc += xlogx(pij) + xlogx(1.0 - pij);
        });
        neg_entropy[l] = acc;
    }
    const Matrix cross = stats.log_odds * p_pairs;

    Matrix eta(views, d);
    for (Eigen::Index v = 0; v < views; ++v) {
        double best = -std::numeric_limits<double>::infinity();
        for (Eigen::Index l = 0; l < d; ++l) {
            const double lam = state.lambda.values[l];
            if (lam > 0.0) {
                const double kl = neg_entropy[l] - cross(v, l) - stats.log1m_sums[v];
                eta(v, l) = std::log(lam) - kl;
                best = std::max(best, eta(v, l));
            } else {
                eta(v, l) = -std::numeric_limits<double>::infinity();
            }
        }
        double total = 0.0;
        for (Eigen::Index l = 0; l < d; ++l) {
            eta(v, l) = std::isinf(eta(v, l)) ? 0.0 : std::exp(eta(v, l) - best);
            total += eta(v, l);
        }
        eta.row(v) /= total;
    }
    return {eta};
}

Responsibilities e_step(const FitState& state, const SimilarityTensor& s)
{
    return e_step(state, PairStatistics::from(s));
}

KappaGamma precompute_kappa_gamma(const PairStatistics& stats, const Responsibilities& eta, Eigen::Index n)
{
    if (eta.values.rows() != stats.log_odds.rows())
        throw std::invalid_argument("precompute_kappa_gamma: responsibilities do not match views");
    const Matrix kappa_pairs = -(stats.log_odds.transpose() * eta.values);
    KappaGamma out;
    out.kappa.reserve(static_cast<std::size_t>(eta.values.cols()));
    for (Eigen::Index l = 0; l < eta.values.cols(); ++l)
        out.kappa.push_back(symmetric_from_pairs(kappa_pairs.col(l), n, 0.0));
    out.gamma = eta.values.colwise().sum().transpose();
    out.constant = -(eta.values.rowwise().sum().array() * stats.log1m_sums.array()).sum();
    return out;
}

KappaGamma precompute_kappa_gamma(const SimilarityTensor& s, const Responsibilities& eta)
{
    return precompute_kappa_gamma(PairStatistics::from(s), eta, s.items());
}

double m_step_objective(const FitState& state, const KappaGamma& kg)
{
    const ModelConfig& cfg = state.config;
    const double mult = cfg.multiplier(state.items());
    double total = 0.0;
    for (std::size_t l = 0; l < state.components.size(); ++l) {
        const auto& c = state.components[l];
        total += component_data_term(c.weights(), kg.kappa[l], kg.gamma[static_cast<Eigen::Index>(l)]);
        total += mult * group_regularizer(c, cfg.epsilon, cfg.smoothing);
    }
    return total;
}

double expected_loss(const FitState& state, const KappaGamma& kg)
{
    return m_step_objective(state, kg) + dirichlet_penalty(state.lambda, state.config.alpha()) + kg.constant;
}

std::vector<Matrix> expected_loss_gradient(const FitState& state, const KappaGamma& kg)
{
    std::vector<GradientWorkspace> ws;
    std::vector<Matrix> grads;
    gradients_into(ws, state, kg, grads);
    return grads;
}

MixtureWeights update_lambda(const Responsibilities& eta, double alpha)
{
    const Vector mass = eta.values.colwise().sum().transpose();
    Vector lambda = (mass.array() + alpha - 1.0).max(0.0).matrix();
    const double total = lambda.sum();
    if (total > 0.0)
        return {lambda / total};
    const double top = mass.maxCoeff();
    lambda = (mass.array() == top).cast<double>().matrix();
    return {lambda / lambda.sum()};
}

void descend(FitState& state, const KappaGamma& kg, Adam& optimizer, int iterations)
{
    std::vector<Matrix> params;
    params.reserve(state.components.size());
    for (const auto& c : state.components)
        params.push_back(c.logits());
    std::vector<GradientWorkspace> ws;
    std::vector<Matrix> grads;
    for (int it = 0; it < iterations; ++it) {
        gradients_into(ws, state, kg, grads);
        for (std::size_t l = 0; l < grads.size(); ++l) {
            if (!grads[l].allFinite()) {
                std::ostringstream msg;
                msg << "non-finite gradient for component " << l + 1 << " at inner iteration " << it + 1;
                throw NumericError(msg.str());
            }
        }
        optimizer.step(params, grads);
        for (std::size_t l = 0; l < params.size(); ++l)
            state.components[l].set_logits(params[l]);
    }
}

void m_step(FitState& state, const KappaGamma& kg, Adam& optimizer)
{
    descend(state, kg, optimizer, state.config.adam.inner_iterations);
    state.lambda = update_lambda(state.eta, state.config.alpha());
}

bool has_converged(const std::vector<double>& history, int window, double tolerance)
{
    const auto w = static_cast<std::size_t>(window);
    if (history.size() <= w)
        return false;
    const double before = history[history.size() - 1 - w];
    const double now = history.back();
    return before - now < tolerance * std::abs(before);
}

FitState fit(const SimilarityTensor& s, const ModelConfig& config)
{
    config.validate();
    const PairStatistics stats = PairStatistics::from(s);
    const Eigen::Index n = s.items();

    std::optional<FitState> best;
    std::string last_failure;
    for (int r = 0; r < config.restarts; ++r) {
        try {
            FitState state = initialize(stats, n, config, derive_seed(config.seed, static_cast<std::uint64_t>(r)));
            state.restart = r;
            std::vector<Matrix> shapes;
            for (const auto& c : state.components)
                shapes.push_back(c.logits());
            Adam optimizer(config.adam, shapes);
            while (state.iterations < config.max_em_iterations) {
                state.eta = e_step(state, stats);
                const KappaGamma kg = precompute_kappa_gamma(stats, state.eta, n);
                m_step(state, kg, optimizer);
                const double loss = expected_loss(state, kg);
                if (!std::isfinite(loss))
                    throw NumericError("non-finite expected loss at EM iteration " +
                                       std::to_string(state.iterations + 1));
                state.loss_history.push_back(loss);
                ++state.iterations;
                if (has_converged(state.loss_history, config.convergence_window, config.convergence_tolerance)) {
                    state.converged = true;
                    break;
                }
            }
            if (!best || state.loss_history.back() < best->loss_history.back())
                best = std::move(state);
        } catch (const NumericError& e) {
            last_failure = "restart " + std::to_string(r + 1) + ": " + e.what();
        }
    }
    if (!best)
        throw NumericError("every restart failed; last: " + last_failure);
    return std::move(*best);
}

} // namespace lsp
