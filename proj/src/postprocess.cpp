#include "lsp/postprocess.hpp"

#include "lsp/initialization.hpp"

#include <algorithm>
#include <set>

namespace lsp {

namespace {

constexpr int kSpectralKMeansRuns = 10;

int distinct(const Labels& labels)
{
    return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

} // namespace

int most_probable_param(const Responsibilities& eta, std::size_t v)
{
    if (static_cast<Eigen::Index>(v) >= eta.values.rows())
        throw std::invalid_argument("most_probable_param: view index out of range");
    Eigen::Index best = 0;
    const auto row = eta.values.row(static_cast<Eigen::Index>(v));
    for (Eigen::Index l = 1; l < row.size(); ++l)
        if (row[l] > row[best])
            best = l;
    return static_cast<int>(best);
}

Labels pointwise_labels(const SimplexWeightMatrix& w)
{
    const Matrix& weights = w.weights();
    Labels out(static_cast<std::size_t>(weights.rows()));
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < weights.cols(); ++k)
            if (weights(i, k) > weights(i, best))
                best = k;
        out[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return out;
}

EffectiveCounts effective_counts(const FitState& state)
{
    EffectiveCounts out;
    std::set<int> used;
    std::vector<int> per_component(state.components.size(), -1);
    for (std::size_t v = 0; v < state.views(); ++v) {
        const int x = most_probable_param(state.eta, v);
        used.insert(x);
        auto& g = per_component[static_cast<std::size_t>(x)];
        if (g < 0)
            g = distinct(pointwise_labels(state.components[static_cast<std::size_t>(x)]));
        out.g_hat.push_back(g);
    }
    out.d_hat = static_cast<int>(used.size());
    return out;
}

Labels spectral_labels(const Matrix& p_hat, int g_hat, std::uint64_t seed)
{
    const Eigen::Index n = p_hat.rows();
    if (p_hat.cols() != n)
        throw std::invalid_argument("spectral_labels: matrix must be square");
    if (g_hat < 1)
        throw std::invalid_argument("spectral_labels: need at least one cluster");
    if ((p_hat.array() < 0.0).any())
        throw std::invalid_argument("spectral_labels: entries must be nonnegative");
    if (g_hat == 1)
        return Labels(static_cast<std::size_t>(n), 0);

    const Vector degree = p_hat.rowwise().sum();
    std::vector<Eigen::Index> live;
    for (Eigen::Index i = 0; i < n; ++i)
        if (degree[i] > 0.0)
            live.push_back(i);
    const auto m = static_cast<Eigen::Index>(live.size());

    Labels out(static_cast<std::size_t>(n), -1);
    int next_label = 0;
    if (m > 0) {
        const int k = static_cast<int>(std::min<Eigen::Index>(g_hat, m));
        Matrix a(m, m);
        for (Eigen::Index c = 0; c < m; ++c)
            for (Eigen::Index r = 0; r < m; ++r)
                a(r, c) = p_hat(live[static_cast<std::size_t>(r)], live[static_cast<std::size_t>(c)]) /
                          std::sqrt(degree[live[static_cast<std::size_t>(r)]] * degree[live[static_cast<std::size_t>(c)]]);
        a = 0.5 * (a + a.transpose());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
        if (solver.info() != Eigen::Success)
            throw NumericError("spectral_labels: eigen decomposition failed");
        Matrix embed(m, k);
        for (int c = 0; c < k; ++c) {
            Vector vec = solver.eigenvectors().col(m - 1 - c);
            Eigen::Index arg = 0;
            vec.cwiseAbs().maxCoeff(&arg);
            if (vec[arg] < 0.0)
                vec = -vec;
            embed.col(c) = vec;
        }
        for (Eigen::Index r = 0; r < m; ++r) {
            const double norm = embed.row(r).norm();
            if (norm > 0.0)
                embed.row(r) /= norm;
        }
        const KMeansResult km = kmeans_best_of(embed, k, seed, kSpectralKMeansRuns);
        for (Eigen::Index r = 0; r < m; ++r)
            out[static_cast<std::size_t>(live[static_cast<std::size_t>(r)])] = km.labels[static_cast<std::size_t>(r)];
        next_label = k;
    }
    for (auto& label : out)
        if (label < 0)
            label = next_label++;
    return out;
}

Consensus consensus_matrix(const FitState& state, const std::vector<ViewEstimate>& views)
{
    if (views.empty())
        throw std::invalid_argument("consensus_matrix: no views");
    const std::size_t d = state.components.size();
    Consensus out;
    out.weights = Vector::Zero(static_cast<Eigen::Index>(views.size()));
    std::vector<double> per_component(d, 0.0);
    double total = 0.0;
    for (std::size_t v = 0; v < views.size(); ++v) {
        if (views[v].g_hat > 1) {
            out.weights[static_cast<Eigen::Index>(v)] = 1.0;
            per_component[static_cast<std::size_t>(views[v].x_hat)] += 1.0;
            total += 1.0;
        }
    }
    if (total == 0.0) {
        out.fallback = true;
        for (const auto& view : views)
            per_component[static_cast<std::size_t>(view.x_hat)] += 1.0;
        total = static_cast<double>(views.size());
    }
    const Eigen::Index n = state.items();
    out.matrix = Matrix::Zero(n, n);
    for (std::size_t l = 0; l < d; ++l)
        if (per_component[l] > 0.0)
            out.matrix += (per_component[l] / total) * coassignment_matrix(state.components[l]);
    return out;
}

FitEstimate estimate(const FitState& state, std::uint64_t seed)
{
    FitEstimate out;
    for (const auto& c : state.components)
        out.p_hat.push_back(coassignment_matrix(c));
    const EffectiveCounts counts = effective_counts(state);
    out.d_hat = counts.d_hat;

    std::vector<Labels> pointwise(state.components.size());
    std::vector<Labels> joint(state.components.size());
    std::vector<bool> done(state.components.size(), false);
    for (std::size_t v = 0; v < state.views(); ++v) {
        ViewEstimate e;
        e.view_id = static_cast<int>(v);
        e.x_hat = most_probable_param(state.eta, v);
        e.g_hat = counts.g_hat[v];
        const auto l = static_cast<std::size_t>(e.x_hat);
        if (!done[l]) {
            pointwise[l] = pointwise_labels(state.components[l]);
            joint[l] = spectral_labels(out.p_hat[l], e.g_hat, derive_seed(seed, l));
            done[l] = true;
        }
        e.pointwise_labels = pointwise[l];
        e.joint_labels = joint[l];
        out.views.push_back(std::move(e));
    }
    out.consensus = consensus_matrix(state, out.views);
    return out;
}

} // namespace lsp
