#include "lsp/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lsp {

void SimilarityOptions::validate() const
{
    if (!(quantile > 0.0 && quantile < 1.0))
        throw std::invalid_argument("similarity quantile must lie in (0, 1)");
    if (!(s_min > 0.0 && s_min < s_max && s_max < 1.0))
        throw std::invalid_argument("similarity clamp must satisfy 0 < s_min < s_max < 1");
}

std::vector<ViewData> split_views(const Matrix& data, const std::vector<ColumnRange>& ranges)
{
    if (ranges.empty())
        throw std::invalid_argument("at least one view is required");
    std::vector<int> owner(static_cast<std::size_t>(data.cols()), -1);
    std::vector<ViewData> views;
    views.reserve(ranges.size());
    for (std::size_t v = 0; v < ranges.size(); ++v) {
        const auto& r = ranges[v];
        if (r.width == 0 || r.begin + r.width > static_cast<std::size_t>(data.cols())) {
            std::ostringstream msg;
            msg << "view " << v + 1 << " column range [" << r.begin << ", " << r.begin + r.width
                << ") is outside the " << data.cols() << " data columns";
            throw std::invalid_argument(msg.str());
        }
        for (std::size_t c = r.begin; c < r.begin + r.width; ++c) {
            if (owner[c] >= 0) {
                std::ostringstream msg;
                msg << "views " << owner[c] + 1 << " and " << v + 1 << " overlap at column " << c;
                throw std::invalid_argument(msg.str());
            }
            owner[c] = static_cast<int>(v);
        }
        views.push_back({data.middleCols(static_cast<Eigen::Index>(r.begin), static_cast<Eigen::Index>(r.width)),
                         static_cast<int>(v)});
    }
    return views;
}

std::vector<ColumnRange> one_column_per_view(std::size_t columns)
{
    std::vector<ColumnRange> out(columns);
    for (std::size_t c = 0; c < columns; ++c)
        out[c] = {c, 1};
    return out;
}

Matrix pairwise_distances(const ViewData& view)
{
    const Matrix& y = view.values;
    const Eigen::Index n = y.rows();
    if (n < 2 || y.cols() < 1)
        throw std::invalid_argument("view " + std::to_string(view.view_id + 1) +
                                    " needs at least 2 rows and 1 column");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!y.row(i).allFinite()) {
            std::ostringstream msg;
            msg << "view " << view.view_id + 1 << ": non-finite value in row " << i + 1;
            throw std::invalid_argument(msg.str());
        }
    }
    Matrix dist = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double d = (y.row(i) - y.row(j)).norm();
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }
    return dist;
}

double quantile_sorted(const std::vector<double>& sorted, double q)
{
    if (sorted.empty())
        throw std::invalid_argument("quantile of an empty sample");
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size())
        return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

Vector local_bandwidths(const Matrix& dist, double q)
{
    const Eigen::Index n = dist.rows();
    Vector sigma(n);
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        row.clear();
        double smallest_positive = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i)
                continue;
            row.push_back(dist(i, j));
            if (dist(i, j) > 0.0)
                smallest_positive = std::min(smallest_positive, dist(i, j));
        }
        if (!std::isfinite(smallest_positive))
            throw std::invalid_argument("row " + std::to_string(i + 1) +
                                        " has no positive distance (all points duplicated)");
        std::sort(row.begin(), row.end());
        const double s = quantile_sorted(row, q);
        sigma[i] = s > 0.0 ? s : smallest_positive;
    }
    return sigma;
}

Matrix similarity_matrix(const ViewData& view, const SimilarityOptions& options)
{
    options.validate();
    const Matrix dist = pairwise_distances(view);
    Vector sigma;
    try {
        sigma = local_bandwidths(dist, options.quantile);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("view " + std::to_string(view.view_id + 1) + ": " + e.what());
    }
    const Eigen::Index n = dist.rows();
    Matrix s(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double b = std::sqrt(sigma[i] * sigma[j]);
            const double v = std::clamp(std::exp(-dist(i, j) / b), options.s_min, options.s_max);
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    s.diagonal().setConstant(options.s_max);
    return s;
}

SimilarityTensor::SimilarityTensor(std::vector<Matrix> matrices, double s_min, double s_max)
    : matrices_(std::move(matrices)), s_min_(s_min), s_max_(s_max)
{
    if (matrices_.empty())
        throw std::invalid_argument("similarity tensor needs at least one view");
    const Eigen::Index n = matrices_.front().rows();
    if (n < 2)
        throw std::invalid_argument("similarity tensor needs at least 2 items");
    for (std::size_t v = 0; v < matrices_.size(); ++v) {
        const Matrix& m = matrices_[v];
        if (m.rows() != n || m.cols() != n)
            throw std::invalid_argument("view " + std::to_string(v + 1) + " similarity is not " +
                                        std::to_string(n) + "x" + std::to_string(n));
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = j + 1; i < n; ++i)
                if (!(m(i, j) > 0.0 && m(i, j) < 1.0) || m(i, j) != m(j, i))
                    throw std::invalid_argument("view " + std::to_string(v + 1) +
                                                " similarity must be symmetric with entries in (0, 1)");
    }
}

SimilarityTensor SimilarityTensor::build(const std::vector<ViewData>& views, const SimilarityOptions& options)
{
    options.validate();
    if (views.empty())
        throw std::invalid_argument("at least one view is required");
    std::vector<Matrix> out;
    out.reserve(views.size());
    for (const auto& view : views) {
        if (view.values.rows() != views.front().values.rows())
            throw std::invalid_argument("views disagree on the number of items");
        out.push_back(similarity_matrix(view, options));
    }
    return SimilarityTensor(std::move(out), options.s_min, options.s_max);
}

PairStatistics PairStatistics::from(const SimilarityTensor& s)
{
    const PairIndex idx(s.items());
    PairStatistics out;
    out.log_odds.resize(static_cast<Eigen::Index>(s.views()), idx.size());
    out.log1m_sums = Vector::Zero(static_cast<Eigen::Index>(s.views()));
    for (std::size_t v = 0; v < s.views(); ++v) {
        const Matrix& m = s[v];
        const auto row = static_cast<Eigen::Index>(v);
        double acc = 0.0;
        idx.for_each([&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
            const double x = m(i, j);
            const double l1m = std::log1p(-x);
            out.log_odds(row, k) = std::log(x) - l1m;
            acc += l1m;
        });
        out.log1m_sums[row] = acc;
    }
    return out;
}

} // namespace lsp
