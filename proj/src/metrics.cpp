#include "lsp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace lsp {

namespace {

double entropy(const std::map<int, double>& counts, double n)
{
    double h = 0.0;
    for (const auto& [label, c] : counts) {
        (void)label;
        const double p = c / n;
        h -= p * std::log(p);
    }
    return h;
}

} // namespace

bool same_partition(const Labels& a, const Labels& b)
{
    if (a.size() != b.size())
        return false;
    std::map<int, int> ab;
    std::map<int, int> ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto [it1, fresh1] = ab.emplace(a[i], b[i]);
        const auto [it2, fresh2] = ba.emplace(b[i], a[i]);
        if ((!fresh1 && it1->second != b[i]) || (!fresh2 && it2->second != a[i]))
            return false;
    }
    return true;
}

double nmi(const Labels& a, const Labels& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("nmi: label vectors have different lengths (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    if (a.empty())
        throw std::invalid_argument("nmi: empty label vectors");
    const auto n = static_cast<double>(a.size());
    std::map<int, double> ca;
    std::map<int, double> cb;
    std::map<std::pair<int, int>, double> joint;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ca[a[i]] += 1.0;
        cb[b[i]] += 1.0;
        joint[{a[i], b[i]}] += 1.0;
    }
    const double ha = entropy(ca, n);
    const double hb = entropy(cb, n);
    if (ha == 0.0 || hb == 0.0)
        return same_partition(a, b) ? 1.0 : 0.0;
    double mi = 0.0;
    for (const auto& [key, c] : joint)
        mi += (c / n) * std::log(c * n / (ca[key.first] * cb[key.second]));
    return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

double mad(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw std::invalid_argument("mad: matrices must be square with equal shapes");
    if (a.rows() < 2)
        throw std::invalid_argument("mad: needs at least a 2x2 matrix");
    std::vector<double> diffs;
    diffs.reserve(static_cast<std::size_t>(a.rows() * (a.rows() - 1) / 2));
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = j + 1; i < a.rows(); ++i)
            diffs.push_back(std::abs(a(i, j) - b(i, j)));
    std::sort(diffs.begin(), diffs.end());
    const std::size_t m = diffs.size();
    return m % 2 == 1 ? diffs[m / 2] : 0.5 * (diffs[m / 2 - 1] + diffs[m / 2]);
}

double CoordinateDensity::log_density(double y) const
{
    switch (family) {
    case Family::Normal: {
        const double z = (y - location) / scale;
        return -0.5 * z * z - std::log(scale) - 0.5 * std::log(2.0 * std::numbers::pi);
    }
    case Family::Exponential: {
        const double x = sign * (y - location);
        if (x < 0.0)
            return -std::numeric_limits<double>::infinity();
        return -x / scale - std::log(scale);
    }
    case Family::Cauchy: {
        const double z = (y - location) / scale;
        return -std::log(std::numbers::pi * scale * (1.0 + z * z));
    }
    }
    throw std::invalid_argument("unsupported density family");
}

double MixtureComponent::log_density(const Eigen::Ref<const Eigen::RowVectorXd>& y) const
{
    if (static_cast<Eigen::Index>(coordinates.size()) != y.size())
        throw std::invalid_argument("mixture component dimension does not match the data");
    double total = 0.0;
    for (std::size_t c = 0; c < coordinates.size(); ++c)
        total += coordinates[c].log_density(y[static_cast<Eigen::Index>(c)]);
    return total;
}

Matrix mixture_posterior(const MixtureSpec& mixture, const Matrix& data)
{
    if (mixture.empty())
        throw std::invalid_argument("mixture has no components");
    const auto k = static_cast<Eigen::Index>(mixture.size());
    Matrix post(data.rows(), k);
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        double best = -std::numeric_limits<double>::infinity();
        for (Eigen::Index c = 0; c < k; ++c) {
            const auto& comp = mixture[static_cast<std::size_t>(c)];
            post(i, c) = std::log(comp.weight) + comp.log_density(data.row(i));
            best = std::max(best, post(i, c));
        }
        if (!std::isfinite(best))
            throw std::invalid_argument("item " + std::to_string(i + 1) + " has zero density under every component");
        post.row(i) = (post.row(i).array() - best).exp();
        post.row(i) /= post.row(i).sum();
    }
    return post;
}

Matrix oracle_coassignment(const MixtureSpec& mixture, const Matrix& data)
{
    const Matrix post = mixture_posterior(mixture, data);
    Matrix p = post * post.transpose();
    p.diagonal().setOnes();
    return p;
}

} // namespace lsp
