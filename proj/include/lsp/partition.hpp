#pragma once

#include "lsp/common.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace lsp {

/// Binary co-clustering adjacency; valid graphs are disjoint unions of cliques.
class ClusterGraph {
public:
    ClusterGraph() = default;
    explicit ClusterGraph(Eigen::Index n);

    static ClusterGraph from_labels(const Labels& labels);

    Eigen::Index size() const { return n_; }
    bool linked(Eigen::Index i, Eigen::Index j) const;
    void set(Eigen::Index i, Eigen::Index j, bool value);

    /// Exhaustive check over all triples: z_ij = z_jk = 1 implies z_ik = 1.
    bool is_transitive() const;

    /// Canonical labels (first-occurrence order). Requires a transitive graph.
    Labels labels() const;

private:
    Eigen::Index n_ = 0;
    std::vector<std::uint8_t> z_;
};

/// Sequential random-partition draw: items are visited in random order; each
/// item tries existing clusters in creation order, joining a cluster with
/// probability p(rep, item) where rep is the cluster's first member; if it
/// joins none it opens a new cluster. Returns canonical labels.
Labels sample_partition_labels(const Matrix& p, std::mt19937_64& rng);

ClusterGraph sample_partition(const Matrix& p, std::uint64_t seed);

/// 1 - NMI between the partitions encoded by the two graphs.
double partition_loss(const ClusterGraph& truth, const ClusterGraph& estimate);
double partition_loss(const Labels& truth, const Labels& estimate);

/// Monte-Carlo mean over views of E_phi[loss(Z0_v, Zhat)].
double empirical_risk(const std::vector<Labels>& truths, const Matrix& p, int samples, std::uint64_t seed);

/// log(exp(1/(12M))·sqrt(pi·M/2) + 2).
double bound_complexity(int m);

/// sum_v sum_{j<i} KL(p_ij || s_v,ij).
double divergence_sum(const Matrix& p, const std::vector<Matrix>& similarities);

/// (1/M)·[sum_v sum_{j<i} KL(p_ij || s_v,ij) / M + bound_complexity(M) - log(delta)].
double bound_rhs(const Matrix& p, const std::vector<Matrix>& similarities, int m, double delta);

struct BoundOptions {
    Eigen::Index n = 5;
    int views = 5;                      ///< M
    double delta = 0.2;
    int replications = 500;
    int risk_samples = 200;             ///< phi draws per view for the empirical risk
    int generalization_draws = 10000;   ///< fresh (Z0, Zhat) pairs for the generalization risk
    double truth_within = 0.9;          ///< two-block co-assignment of the ground-truth process
    double truth_between = 0.1;
    double model_within = 0.9;          ///< co-assignment driving phi
    double model_between = 0.1;
    double similarity_mix = 0.0;        ///< S_v = (1 - mix)·P + mix·Z0_v, clamped
    std::uint64_t seed = 0;

    void validate() const;
};

struct ReplicationRecord {
    int index = 0;
    double empirical_risk = 0.0;
    double generalization_risk = 0.0;
    double kl_sum = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    bool skipped = false;
};

struct BoundReport {
    BoundOptions options;
    int evaluated = 0;
    int skipped = 0;
    int holds = 0;
    double holds_fraction = 0.0;
    double mean_lhs = 0.0;
    double mean_rhs = 0.0;
    std::vector<ReplicationRecord> records;
};

/// Two-block co-assignment matrix (first ceil(n/2) items vs the rest); unit diagonal.
Matrix two_block_matrix(Eigen::Index n, double within, double between);

BoundReport verify_theorem(const BoundOptions& options);

} // namespace lsp
