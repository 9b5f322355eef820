#pragma once

#include "lsp/common.hpp"
#include "lsp/optimizer.hpp"
#include "lsp/similarity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lsp {

struct ModelConfig {
    int d = 1;                             ///< candidate parameterizations
    int g = 2;                             ///< clusters per parameterization
    std::optional<double> alpha_lambda;    ///< Dirichlet concentration on lambda; default 1/d
    double epsilon = 1e-3;                 ///< group-regularizer threshold
    std::optional<double> reg_multiplier;  ///< multiplier on R; default n
    double smoothing = 1e-12;              ///< added under each column norm of R
    AdamOptions adam;
    int convergence_window = 100;
    double convergence_tolerance = 0.01;
    int max_em_iterations = 2000;
    int restarts = 3;
    double init_logit_scale = 1e-2;
    std::uint64_t seed = 0;

    void validate() const;
    double alpha() const { return alpha_lambda.value_or(1.0 / d); }
    double multiplier(Eigen::Index n) const { return reg_multiplier.value_or(static_cast<double>(n)); }
};

/// Rows on the probability simplex, parameterized by unconstrained logits
/// through a row-wise normalized exponential.
class SimplexWeightMatrix {
public:
    SimplexWeightMatrix() = default;
    explicit SimplexWeightMatrix(Matrix logits);

    /// Logits log(w); every weight must be positive.
    static SimplexWeightMatrix from_weights(const Matrix& weights);

    const Matrix& logits() const { return logits_; }
    const Matrix& weights() const { return weights_; }
    void set_logits(Matrix logits);

    Eigen::Index items() const { return logits_.rows(); }
    Eigen::Index clusters() const { return logits_.cols(); }

private:
    Matrix logits_;
    Matrix weights_;
};

/// Prior weights of the d candidate parameterizations.
struct MixtureWeights {
    Vector values;

    static MixtureWeights uniform(int d) { return {Vector::Constant(d, 1.0 / d)}; }
};

/// V x d row-stochastic matrix: posterior of each view's parameterization.
struct Responsibilities {
    Matrix values;

    static Responsibilities one_hot(const Labels& assignment, int d);
};

struct FitState {
    ModelConfig config;
    std::vector<SimplexWeightMatrix> components;
    MixtureWeights lambda;
    Responsibilities eta;
    std::vector<double> loss_history;
    int iterations = 0;
    bool converged = false;
    int restart = 0;
    Labels init_assignment;

    Eigen::Index items() const { return components.empty() ? 0 : components.front().items(); }
    std::size_t views() const { return static_cast<std::size_t>(eta.values.rows()); }
};

/// Per-parameterization sufficient statistics of the expected data-fit loss.
struct KappaGamma {
    std::vector<Matrix> kappa;  ///< symmetric n x n, zero diagonal
    Vector gamma;
    double constant = 0.0;      ///< the W-free term C
};

/// Bernoulli KL(p || s); 0·log 0 = 0. Throws when s is not in (0, 1).
double kl_bernoulli(double p, double s);

/// P* = W·W^T.
Matrix coassignment_matrix(const SimplexWeightMatrix& w);

/// sum_v sum_l eta_vl sum_{j<i} KL(p*_l(i,j) || s_v(i,j)), summed directly.
double data_fit_loss(const std::vector<Matrix>& p_star, const SimilarityTensor& s, const Responsibilities& eta);

/// sum_k sqrt(smoothing + sum_i (log(w_ik / epsilon))_+^2) - g·sqrt(smoothing).
double group_regularizer(const SimplexWeightMatrix& w, double epsilon, double smoothing = 1e-12);

/// sum_l (1 - alpha)·log(max(lambda_l, 1e-12)).
double dirichlet_penalty(const MixtureWeights& lambda, double alpha);

/// Expected data-fit loss + multiplier·sum_l R(W_l) + sum_l T(lambda_l), evaluated directly.
double reg_loss(const FitState& state, const SimilarityTensor& s);

Responsibilities e_step(const FitState& state, const PairStatistics& stats);
Responsibilities e_step(const FitState& state, const SimilarityTensor& s);

KappaGamma precompute_kappa_gamma(const PairStatistics& stats, const Responsibilities& eta, Eigen::Index n);
KappaGamma precompute_kappa_gamma(const SimilarityTensor& s, const Responsibilities& eta);

/// Refactored expected loss (kappa/gamma form) plus regularizers plus C;
/// equals reg_loss for the eta the statistics were built from.
double expected_loss(const FitState& state, const KappaGamma& kg);

/// M-step objective without C: refactored data term plus regularizers.
double m_step_objective(const FitState& state, const KappaGamma& kg);

/// Gradient of the M-step objective with respect to every component's logits.
std::vector<Matrix> expected_loss_gradient(const FitState& state, const KappaGamma& kg);

/// Mode of lambda given responsibilities; falls back to uniform over the
/// largest-mass components when every numerator vanishes.
MixtureWeights update_lambda(const Responsibilities& eta, double alpha);

/// Gradient iterations on all logits, then the lambda mode update.
void m_step(FitState& state, const KappaGamma& kg, Adam& optimizer);

/// Gradient iterations only (lambda untouched).
void descend(FitState& state, const KappaGamma& kg, Adam& optimizer, int iterations);

/// Relative decrease of the trailing window below tolerance.
bool has_converged(const std::vector<double>& history, int window, double tolerance);

/// EM with restarts; returns the restart with lowest final loss.
FitState fit(const SimilarityTensor& s, const ModelConfig& config);

} // namespace lsp
