#pragma once

#include "lsp/common.hpp"

#include <cstddef>
#include <vector>

namespace lsp {

/// Columns of one view: rows are items, columns the view's variables.
struct ViewData {
    Matrix values;
    int view_id = 0;
};

/// Half-open column range [begin, begin + width) of the full data matrix.
struct ColumnRange {
    std::size_t begin = 0;
    std::size_t width = 1;
};

struct SimilarityOptions {
    double quantile = 0.05;
    double s_min = 1e-6;
    double s_max = 1.0 - 1e-6;

    void validate() const;
};

/// Splits a data matrix into views. Ranges must be disjoint and in bounds.
std::vector<ViewData> split_views(const Matrix& data, const std::vector<ColumnRange>& ranges);

/// One single-column view per data column.
std::vector<ColumnRange> one_column_per_view(std::size_t columns);

/// Euclidean distances between rows; exactly symmetric with zero diagonal.
Matrix pairwise_distances(const ViewData& view);

/// Type-7 quantile (linear interpolation between order statistics) of a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double q);

/// Per-row scale: q-quantile of the row's off-diagonal distances, falling back
/// to the smallest positive distance when the quantile is zero.
Vector local_bandwidths(const Matrix& dist, double q);

/// exp(-d_ij / sqrt(sigma_i sigma_j)) clamped into [s_min, s_max]; diagonal = s_max.
Matrix similarity_matrix(const ViewData& view, const SimilarityOptions& options);

/// Per-view similarity matrices sharing one item set.
class SimilarityTensor {
public:
    SimilarityTensor() = default;
    SimilarityTensor(std::vector<Matrix> matrices, double s_min, double s_max);

    static SimilarityTensor build(const std::vector<ViewData>& views, const SimilarityOptions& options);

    std::size_t views() const { return matrices_.size(); }
    Eigen::Index items() const { return matrices_.empty() ? 0 : matrices_.front().rows(); }
    const Matrix& operator[](std::size_t v) const { return matrices_[v]; }
    double s_min() const { return s_min_; }
    double s_max() const { return s_max_; }

private:
    std::vector<Matrix> matrices_;
    double s_min_ = 1e-6;
    double s_max_ = 1.0 - 1e-6;
};

/// Pair-vectorized log-odds and log(1-s) sums, shared by the E-step,
/// the kappa/gamma statistics and the K-means initializer.
struct PairStatistics {
    Matrix log_odds;      ///< V x n(n-1)/2, rows in PairIndex order
    Vector log1m_sums;    ///< per view: sum over pairs of log(1 - s)

    static PairStatistics from(const SimilarityTensor& s);
};

} // namespace lsp
