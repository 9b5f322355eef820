#include "lsp/initialization.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace lsp {

namespace {

double squared_distance(const Matrix& a, Eigen::Index i, const Matrix& b, Eigen::Index k)
{
    return (a.row(i) - b.row(k)).squaredNorm();
}

// Assigns each point to its nearest center (lowest index on ties); returns the objective.
double assign(const Matrix& points, const Matrix& centers, Labels& labels, Vector& dist)
{
    double objective = 0.0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (Eigen::Index k = 0; k < centers.rows(); ++k) {
            const double d = squared_distance(points, i, centers, k);
            if (d < best) {
                best = d;
                arg = static_cast<int>(k);
            }
        }
        labels[static_cast<std::size_t>(i)] = arg;
        dist[i] = best;
        objective += best;
    }
    return objective;
}

} // namespace

Matrix log_odds_features(const SimilarityTensor& s)
{
    return PairStatistics::from(s).log_odds;
}

KMeansResult kmeans_pp(const Matrix& points, int k, std::uint64_t seed, const KMeansOptions& options)
{
    const Eigen::Index m = points.rows();
    if (k < 1)
        throw std::invalid_argument("kmeans: K must be at least 1");
    if (k > m)
        throw std::invalid_argument("kmeans: K = " + std::to_string(k) + " exceeds the " + std::to_string(m) +
                                    " points");
    std::mt19937_64 rng(seed);

    // K-means++ seeding.
    Matrix centers(k, points.cols());
    Vector nearest = Vector::Constant(m, std::numeric_limits<double>::infinity());
    std::uniform_int_distribution<Eigen::Index> first(0, m - 1);
    centers.row(0) = points.row(first(rng));
    for (int c = 1; c <= k; ++c) {
        for (Eigen::Index i = 0; i < m; ++i)
            nearest[i] = std::min(nearest[i], squared_distance(points, i, centers, c - 1));
        if (c == k)
            break;
        const double total = nearest.sum();
        Eigen::Index pick = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            const double target = u(rng);
            double acc = 0.0;
            pick = m - 1;
            for (Eigen::Index i = 0; i < m; ++i) {
                acc += nearest[i];
                if (acc >= target && nearest[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = first(rng);
        }
        centers.row(c) = points.row(pick);
    }

    KMeansResult out;
    out.labels.assign(static_cast<std::size_t>(m), 0);
    Vector dist(m);
    double objective = assign(points, centers, out.labels, dist);
    out.trace.push_back(objective);

    for (int it = 0; it < options.max_iterations; ++it) {
        Matrix sums = Matrix::Zero(k, points.cols());
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < m; ++i) {
            sums.row(out.labels[static_cast<std::size_t>(i)]) += points.row(i);
            ++counts[static_cast<std::size_t>(out.labels[static_cast<std::size_t>(i)])];
        }
        std::vector<bool> taken(static_cast<std::size_t>(m), false);
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
                continue;
            }
            Eigen::Index far = 0;
            double far_d = -1.0;
            for (Eigen::Index i = 0; i < m; ++i) {
                if (!taken[static_cast<std::size_t>(i)] && dist[i] > far_d) {
                    far_d = dist[i];
                    far = i;
                }
            }
            taken[static_cast<std::size_t>(far)] = true;
            centers.row(c) = points.row(far);
        }
        const double next = assign(points, centers, out.labels, dist);
        out.trace.push_back(next);
        const double drop = objective - next;
        objective = next;
        if (drop <= options.tolerance * std::abs(out.trace[out.trace.size() - 2]))
            break;
    }
    out.centers = std::move(centers);
    out.objective = objective;
    return out;
}

KMeansResult kmeans_best_of(const Matrix& points, int k, std::uint64_t seed, int runs, const KMeansOptions& options)
{
    KMeansResult best;
    for (int r = 0; r < runs; ++r) {
        KMeansResult res = kmeans_pp(points, k, derive_seed(seed, static_cast<std::uint64_t>(r)), options);
        if (r == 0 || res.objective < best.objective)
            best = std::move(res);
    }
    return best;
}

FitState initialize(const PairStatistics& stats, Eigen::Index n, const ModelConfig& config, std::uint64_t seed)
{
    config.validate();
    const auto views = static_cast<int>(stats.log_odds.rows());
    FitState state;
    state.config = config;

    if (config.d == 1) {
        state.init_assignment.assign(static_cast<std::size_t>(views), 0);
    } else {
        if (config.d > views)
            throw std::invalid_argument("d = " + std::to_string(config.d) + " exceeds the number of views (" +
                                        std::to_string(views) + ")");
        state.init_assignment = kmeans_pp(stats.log_odds, config.d, derive_seed(seed, 0)).labels;
    }
    state.eta = Responsibilities::one_hot(state.init_assignment, config.d);
    state.lambda = MixtureWeights::uniform(config.d);

    std::mt19937_64 rng(derive_seed(seed, 1));
    std::uniform_real_distribution<double> noise(-config.init_logit_scale, config.init_logit_scale);
    std::vector<Matrix> shapes;
    for (int l = 0; l < config.d; ++l) {
        Matrix logits(n, config.g);
        for (Eigen::Index k = 0; k < logits.cols(); ++k)
            for (Eigen::Index i = 0; i < n; ++i)
                logits(i, k) = noise(rng);
        state.components.emplace_back(std::move(logits));
        shapes.push_back(state.components.back().logits());
    }

    const KappaGamma kg = precompute_kappa_gamma(stats, state.eta, n);
    Adam optimizer(config.adam, shapes);
    // The starting M-step fits W to the data statistics alone.
    state.config.reg_multiplier = 0.0;
    descend(state, kg, optimizer, config.adam.inner_iterations);
    state.config.reg_multiplier = config.reg_multiplier;
    return state;
}

FitState initialize(const SimilarityTensor& s, const ModelConfig& config, std::uint64_t seed)
{
    return initialize(PairStatistics::from(s), s.items(), config, seed);
}

} // namespace lsp
