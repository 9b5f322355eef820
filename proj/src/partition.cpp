#include "lsp/partition.hpp"

#include "lsp/metrics.hpp"
#include "lsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace lsp {

ClusterGraph::ClusterGraph(Eigen::Index n) : n_(n), z_(static_cast<std::size_t>(n * n), 0)
{
    for (Eigen::Index i = 0; i < n; ++i)
        z_[static_cast<std::size_t>(i * n + i)] = 1;
}

ClusterGraph ClusterGraph::from_labels(const Labels& labels)
{
    const auto n = static_cast<Eigen::Index>(labels.size());
    ClusterGraph g(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)])
                g.set(i, j, true);
    return g;
}

bool ClusterGraph::linked(Eigen::Index i, Eigen::Index j) const
{
    return z_[static_cast<std::size_t>(i * n_ + j)] != 0;
}

void ClusterGraph::set(Eigen::Index i, Eigen::Index j, bool value)
{
    z_[static_cast<std::size_t>(i * n_ + j)] = value ? 1 : 0;
    z_[static_cast<std::size_t>(j * n_ + i)] = value ? 1 : 0;
}

bool ClusterGraph::is_transitive() const
{
    for (Eigen::Index i = 0; i < n_; ++i)
        for (Eigen::Index j = 0; j < n_; ++j) {
            if (i == j || !linked(i, j))
                continue;
            for (Eigen::Index k = 0; k < n_; ++k)
                if (k != i && k != j && linked(j, k) && !linked(i, k))
                    return false;
        }
    return true;
}

Labels ClusterGraph::labels() const
{
    if (!is_transitive())
        throw std::invalid_argument("cluster graph is not a disjoint union of cliques");
    Labels out(static_cast<std::size_t>(n_), -1);
    int next = 0;
    for (Eigen::Index i = 0; i < n_; ++i) {
        if (out[static_cast<std::size_t>(i)] >= 0)
            continue;
        for (Eigen::Index j = i; j < n_; ++j)
            if (linked(i, j))
                out[static_cast<std::size_t>(j)] = next;
        ++next;
    }
    return out;
}

Labels sample_partition_labels(const Matrix& p, std::mt19937_64& rng)
{
    const Eigen::Index n = p.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Labels labels(static_cast<std::size_t>(n), -1);
    std::vector<Eigen::Index> representative;
    for (const Eigen::Index j : order) {
        int joined = -1;
        for (std::size_t c = 0; c < representative.size(); ++c) {
            if (unit(rng) < p(representative[c], j)) {
                joined = static_cast<int>(c);
                break;
            }
        }
        if (joined < 0) {
            joined = static_cast<int>(representative.size());
            representative.push_back(j);
        }
        labels[static_cast<std::size_t>(j)] = joined;
    }
    // Canonical relabeling by first occurrence in item order.
    std::vector<int> remap(representative.size(), -1);
    int next = 0;
    for (auto& l : labels) {
        auto& r = remap[static_cast<std::size_t>(l)];
        if (r < 0)
            r = next++;
        l = r;
    }
    return labels;
}

ClusterGraph sample_partition(const Matrix& p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return ClusterGraph::from_labels(sample_partition_labels(p, rng));
}

double partition_loss(const Labels& truth, const Labels& estimate)
{
    return 1.0 - nmi(truth, estimate);
}

double partition_loss(const ClusterGraph& truth, const ClusterGraph& estimate)
{
    if (truth.size() != estimate.size())
        throw std::invalid_argument("partition_loss: graphs differ in size");
    return partition_loss(truth.labels(), estimate.labels());
}

double empirical_risk(const std::vector<Labels>& truths, const Matrix& p, int samples, std::uint64_t seed)
{
    if (truths.empty() || samples < 1)
        throw std::invalid_argument("empirical_risk: need at least one view and one sample");
    std::mt19937_64 rng(seed);
    double total = 0.0;
    for (const auto& truth : truths) {
        double acc = 0.0;
        for (int s = 0; s < samples; ++s)
            acc += partition_loss(truth, sample_partition_labels(p, rng));
        total += acc / samples;
    }
    return total / static_cast<double>(truths.size());
}

double bound_complexity(int m)
{
    const double md = m;
    return std::log(std::exp(1.0 / (12.0 * md)) * std::sqrt(std::numbers::pi * md / 2.0) + 2.0);
}

double divergence_sum(const Matrix& p, const std::vector<Matrix>& similarities)
{
    double kl = 0.0;
    for (const auto& s : similarities)
        for (Eigen::Index j = 0; j < p.cols(); ++j)
            for (Eigen::Index i = j + 1; i < p.rows(); ++i)
                kl += kl_bernoulli(p(i, j), s(i, j));
    return kl;
}

double bound_rhs(const Matrix& p, const std::vector<Matrix>& similarities, int m, double delta)
{
    if (m < 2)
        throw std::invalid_argument("bound_rhs: M must be at least 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("bound_rhs: delta must lie in (0, 1)");
    const double md = m;
    return (divergence_sum(p, similarities) / md + bound_complexity(m) - std::log(delta)) / md;
}

void BoundOptions::validate() const
{
    if (n < 2)
        throw std::invalid_argument("bound verification needs n >= 2");
    if (views < 2)
        throw std::invalid_argument("bound verification needs M >= 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("delta must lie in (0, 1)");
    if (replications < 1 || risk_samples < 1 || generalization_draws < 1)
        throw std::invalid_argument("replication and sample counts must be positive");
    for (double q : {truth_within, truth_between, model_within, model_between})
        if (!(q > 0.0 && q < 1.0))
            throw std::invalid_argument("co-assignment probabilities must lie in (0, 1)");
    if (!(similarity_mix >= 0.0 && similarity_mix <= 1.0))
        throw std::invalid_argument("similarity mix must lie in [0, 1]");
}

Matrix two_block_matrix(Eigen::Index n, double within, double between)
{
    const Eigen::Index first = (n + 1) / 2;
    Matrix p(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            p(i, j) = i == j ? 1.0 : ((i < first) == (j < first) ? within : between);
    return p;
}

BoundReport verify_theorem(const BoundOptions& options)
{
    options.validate();
    constexpr double kClamp = 1e-6;
    const Matrix truth_p = two_block_matrix(options.n, options.truth_within, options.truth_between);
    const Matrix model_p = two_block_matrix(options.n, options.model_within, options.model_between);

    BoundReport report;
    report.options = options;
    double lhs_sum = 0.0;
    double rhs_sum = 0.0;
    for (int r = 0; r < options.replications; ++r) {
        std::mt19937_64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
        ReplicationRecord rec;
        rec.index = r;

        std::vector<Labels> truths;
        std::vector<Matrix> sims;
        for (int v = 0; v < options.views; ++v) {
            truths.push_back(sample_partition_labels(truth_p, rng));
            const Labels& t = truths.back();
            const Matrix z = Matrix::NullaryExpr(options.n, options.n, [&](Eigen::Index i, Eigen::Index j) {
                return t[static_cast<std::size_t>(i)] == t[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
            });
            Matrix s = ((1.0 - options.similarity_mix) * model_p + options.similarity_mix * z)
                           .cwiseMax(kClamp)
                           .cwiseMin(1.0 - kClamp);
            sims.push_back(std::move(s));
        }
        for (const auto& truth : truths) {
            double acc = 0.0;
            for (int s = 0; s < options.risk_samples; ++s)
                acc += partition_loss(truth, sample_partition_labels(model_p, rng));
            rec.empirical_risk += acc / options.risk_samples;
        }
        rec.empirical_risk /= options.views;

        double gen = 0.0;
        for (int s = 0; s < options.generalization_draws; ++s) {
            const Labels fresh = sample_partition_labels(truth_p, rng);
            gen += partition_loss(fresh, sample_partition_labels(model_p, rng));
        }
        rec.generalization_risk = gen / options.generalization_draws;

        rec.rhs = bound_rhs(model_p, sims, options.views, options.delta);
        rec.kl_sum = divergence_sum(model_p, sims);
        const bool degenerate = !(rec.empirical_risk > 0.0 && rec.empirical_risk < 1.0) ||
                                !(rec.generalization_risk > 0.0 && rec.generalization_risk < 1.0);
        if (degenerate) {
            rec.skipped = true;
            ++report.skipped;
        } else {
            rec.lhs = kl_bernoulli(rec.generalization_risk, rec.empirical_risk);
            rec.holds = rec.lhs <= rec.rhs;
            ++report.evaluated;
            report.holds += rec.holds ? 1 : 0;
            lhs_sum += rec.lhs;
            rhs_sum += rec.rhs;
        }
        report.records.push_back(rec);
    }
    if (report.evaluated > 0) {
        report.holds_fraction = static_cast<double>(report.holds) / report.evaluated;
        report.mean_lhs = lhs_sum / report.evaluated;
        report.mean_rhs = rhs_sum / report.evaluated;
    }
    return report;
}

} // namespace lsp
