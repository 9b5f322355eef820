#pragma once

#include "lsp/model.hpp"
#include "lsp/similarity.hpp"

#include <cstdint>
#include <vector>

namespace lsp {

struct KMeansResult {
    Labels labels;
    Matrix centers;                   ///< K x dim
    double objective = 0.0;           ///< within-cluster sum of squares
    std::vector<double> trace;        ///< objective after seeding and after each Lloyd pass
};

struct KMeansOptions {
    int max_iterations = 100;
    double tolerance = 1e-6;          ///< stop when relative objective decrease falls below
};

/// V x n(n-1)/2 log-odds vectorization (strict lower triangle, column-major by j).
Matrix log_odds_features(const SimilarityTensor& s);

/// Lloyd iterations from K-means++ seeding over the rows of `points`.
/// Empty clusters are re-seeded at the point farthest from its center.
KMeansResult kmeans_pp(const Matrix& points, int k, std::uint64_t seed, const KMeansOptions& options = {});

/// Best of several K-means++ runs (lowest objective), each with a derived seed.
KMeansResult kmeans_best_of(const Matrix& points, int k, std::uint64_t seed, int runs,
                            const KMeansOptions& options = {});

/// K-means labels on log-odds give one-hot eta and uniform lambda; W logits
/// start at small uniform noise and one M-step fits them.
FitState initialize(const PairStatistics& stats, Eigen::Index n, const ModelConfig& config, std::uint64_t seed);
FitState initialize(const SimilarityTensor& s, const ModelConfig& config, std::uint64_t seed);

} // namespace lsp
