#include "lsp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace lsp {

namespace {

using Family = CoordinateDensity::Family;

CoordinateDensity normal(double mean) { return {Family::Normal, mean, 1.0, 1.0}; }
CoordinateDensity exponential(double shift, double scale, double sign) { return {Family::Exponential, shift, scale, sign}; }
CoordinateDensity cauchy(double loc) { return {Family::Cauchy, loc, 1.0, 1.0}; }

double draw(const CoordinateDensity& c, std::mt19937_64& rng)
{
    switch (c.family) {
    case Family::Normal:
        return std::normal_distribution<double>(c.location, c.scale)(rng);
    case Family::Exponential:
        return c.location + c.sign * std::exponential_distribution<double>(1.0 / c.scale)(rng);
    case Family::Cauchy:
        return std::cauchy_distribution<double>(c.location, c.scale)(rng);
    }
    throw std::invalid_argument("unsupported density family");
}

double median_of(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

} // namespace

SingleViewSetting parse_setting(const std::string& name)
{
    if (name.size() == 1) {
        switch (name[0]) {
        case 'a': case 'A': return SingleViewSetting::A;
        case 'b': case 'B': return SingleViewSetting::B;
        case 'c': case 'C': return SingleViewSetting::C;
        case 'd': case 'D': return SingleViewSetting::D;
        case 'e': case 'E': return SingleViewSetting::E;
        case 'f': case 'F': return SingleViewSetting::F;
        default: break;
        }
    }
    throw std::invalid_argument("unknown single-view setting '" + name + "' (expected a..f)");
}

char setting_name(SingleViewSetting s)
{
    return static_cast<char>('a' + static_cast<int>(s));
}

MixtureSpec setting_mixture(SingleViewSetting setting)
{
    switch (setting) {
    case SingleViewSetting::A:
        return {{0.5, {normal(0), normal(0)}}, {0.5, {normal(10), normal(10)}}};
    case SingleViewSetting::B:
        return {{0.5, {normal(0), normal(0)}}, {0.5, {normal(3), normal(3)}}};
    case SingleViewSetting::C:
        return {{0.5, {normal(0), normal(0)}}, {0.5, {normal(2), normal(2)}}};
    case SingleViewSetting::D:
        return {{0.5, {exponential(-4, 1, 1), exponential(-4, 1, 1)}},
                {0.5, {exponential(0, 1, -1), exponential(0, 1, -1)}}};
    case SingleViewSetting::E:
        // Second coordinate: rate-10 exponential (mean 0.1).
        return {{0.5, {exponential(0, 1, 1), exponential(0, 0.1, 1)}},
                {0.5, {exponential(2, 1, 1), exponential(15, 0.1, 1)}}};
    case SingleViewSetting::F:
        return {{0.5, {cauchy(0), cauchy(0)}}, {0.5, {cauchy(3), cauchy(3)}}};
    }
    throw std::invalid_argument("unknown single-view setting");
}

LabeledData sample_mixture(const MixtureSpec& mixture, Eigen::Index n, std::uint64_t seed)
{
    if (n < 2)
        throw std::invalid_argument("need at least 2 items");
    if (mixture.empty())
        throw std::invalid_argument("mixture has no components");
    std::vector<double> weights;
    for (const auto& c : mixture)
        weights.push_back(c.weight);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    const auto dim = static_cast<Eigen::Index>(mixture.front().coordinates.size());
    LabeledData out{Matrix(n, dim), Labels(static_cast<std::size_t>(n))};
    for (Eigen::Index i = 0; i < n; ++i) {
        const int k = pick(rng);
        out.labels[static_cast<std::size_t>(i)] = k;
        const auto& comp = mixture[static_cast<std::size_t>(k)];
        for (Eigen::Index c = 0; c < dim; ++c)
            out.data(i, c) = draw(comp.coordinates[static_cast<std::size_t>(c)], rng);
    }
    return out;
}

LabeledData single_view(SingleViewSetting setting, Eigen::Index n, std::uint64_t seed)
{
    return sample_mixture(setting_mixture(setting), n, seed);
}

MultiViewData multi_view(const MultiViewSpec& spec)
{
    if (spec.patterns < 1 || spec.clusters < 2)
        throw std::invalid_argument("multi_view: need at least 1 pattern and 2 clusters");
    if (static_cast<int>(spec.means.size()) < spec.clusters)
        throw std::invalid_argument("multi_view: fewer emission means than clusters");
    if (spec.n < 2 || spec.views < 1)
        throw std::invalid_argument("multi_view: need n >= 2 and at least one view");
    std::mt19937_64 rng(spec.seed);
    MultiViewData out;
    std::gamma_distribution<double> gamma(spec.dirichlet_alpha, 1.0);
    for (int l = 0; l < spec.patterns; ++l) {
        Matrix w(spec.n, spec.clusters);
        for (Eigen::Index i = 0; i < spec.n; ++i) {
            for (int k = 0; k < spec.clusters; ++k)
                w(i, k) = gamma(rng);
            const double total = w.row(i).sum();
            if (total > 0.0)
                w.row(i) /= total;
            else
                w.row(i).setConstant(1.0 / spec.clusters);
        }
        out.weights.push_back(std::move(w));
    }
    std::uniform_int_distribution<int> pattern(0, spec.patterns - 1);
    std::normal_distribution<double> noise(0.0, 1.0);
    out.data.resize(spec.n, 2 * spec.views);
    for (Eigen::Index v = 0; v < spec.views; ++v) {
        const int x = pattern(rng);
        out.pattern.push_back(x);
        const Matrix& w = out.weights[static_cast<std::size_t>(x)];
        Labels labels(static_cast<std::size_t>(spec.n));
        for (Eigen::Index i = 0; i < spec.n; ++i) {
            // w is column-major; copy the row before handing it to the distribution.
            const Eigen::RowVectorXd row = w.row(i);
            std::discrete_distribution<int> cat(row.data(), row.data() + row.size());
            const int c = cat(rng);
            labels[static_cast<std::size_t>(i)] = c;
            const auto& mu = spec.means[static_cast<std::size_t>(c)];
            out.data(i, 2 * v) = mu[0] + noise(rng);
            out.data(i, 2 * v + 1) = mu[1] + noise(rng);
        }
        out.labels.push_back(std::move(labels));
    }
    return out;
}

ConsensusData consensus_views(Eigen::Index n, std::uint64_t seed)
{
    if (n < 10)
        throw std::invalid_argument("consensus_views: need n >= 10");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::uniform_int_distribution<int> two(0, 1);
    std::uniform_int_distribution<int> three(0, 2);
    ConsensusData out;
    out.data.resize(n, 10);
    out.labels.assign(10, Labels(static_cast<std::size_t>(n), 0));
    out.structured.assign(10, false);
    out.structured[0] = out.structured[1] = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        const int c1 = two(rng);
        out.labels[0][static_cast<std::size_t>(i)] = c1;
        out.data(i, 0) = 2.0 * c1 + z(rng);
        const int c2 = three(rng);
        out.labels[1][static_cast<std::size_t>(i)] = c2;
        out.data(i, 1) = 1.0 * c2 + z(rng);
        for (Eigen::Index v = 2; v < 10; ++v)
            out.data(i, v) = z(rng);
    }
    return out;
}

std::vector<std::size_t> screen_columns(const Matrix& data, std::size_t top_v)
{
    const auto p = static_cast<std::size_t>(data.cols());
    if (top_v > p)
        throw std::invalid_argument("screen_columns: top_v = " + std::to_string(top_v) + " exceeds the " +
                                    std::to_string(p) + " columns");
    if (data.rows() < 2)
        throw std::invalid_argument("screen_columns: need at least 2 rows");
    struct Score {
        bool zero_median;
        double ratio;
    };
    std::vector<Score> scores(p);
    for (std::size_t c = 0; c < p; ++c) {
        const auto col = data.col(static_cast<Eigen::Index>(c));
        std::vector<double> values(col.data(), col.data() + col.size());
        const double med = median_of(values);
        const double mean = col.mean();
        const double sd = std::sqrt((col.array() - mean).square().sum() / static_cast<double>(col.size() - 1));
        scores[c] = med == 0.0 ? Score{true, 0.0} : Score{false, sd / med};
    }
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a].zero_median != scores[b].zero_median)
            return !scores[a].zero_median;
        return scores[a].ratio > scores[b].ratio;
    });
    order.resize(top_v);
    return order;
}

} // namespace lsp
