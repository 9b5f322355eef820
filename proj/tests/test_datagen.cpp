#include "doctest.h"

#include "lsp/datagen.hpp"

#include <cmath>
#include <set>

using namespace lsp;

namespace {

Eigen::RowVectorXd cluster_mean(const LabeledData& d, int label)
{
    Eigen::RowVectorXd m = Eigen::RowVectorXd::Zero(d.data.cols());
    int count = 0;
    for (Eigen::Index i = 0; i < d.data.rows(); ++i)
        if (d.labels[static_cast<std::size_t>(i)] == label) {
            m += d.data.row(i);
            ++count;
        }
    return m / count;
}

} // namespace

TEST_CASE("setting names")
{
    for (char c : std::string("abcdef"))
        CHECK(setting_name(parse_setting(std::string(1, c))) == c);
    CHECK_THROWS_AS(parse_setting("g"), std::invalid_argument);
}

TEST_CASE("gaussian setting geometry")
{
    auto d = single_view(SingleViewSetting::A, 400, 1);
    CHECK(d.data.rows() == 400);
    CHECK(d.data.cols() == 2);
    const double dist = (cluster_mean(d, 1) - cluster_mean(d, 0)).norm();
    // sampling error of each mean is about 0.1 per coordinate
    CHECK(dist == doctest::Approx(10.0 * std::sqrt(2.0)).epsilon(0.05));
    CHECK(std::set<int>(d.labels.begin(), d.labels.end()) == std::set<int>{0, 1});
}

TEST_CASE("settings are deterministic per seed")
{
    for (char c : std::string("abcdef")) {
        auto s = parse_setting(std::string(1, c));
        auto a = single_view(s, 50, 7), b = single_view(s, 50, 7), other = single_view(s, 50, 8);
        CHECK(a.data == b.data);
        CHECK(a.labels == b.labels);
        CHECK(a.data != other.data);
    }
}

TEST_CASE("support of the exponential settings")
{
    auto d = single_view(SingleViewSetting::D, 300, 2);
    for (Eigen::Index i = 0; i < 300; ++i) {
        if (d.labels[static_cast<std::size_t>(i)] == 0)
            CHECK((d.data.row(i).array() > -4.0).all());
        else
            CHECK((d.data.row(i).array() < 0.0).all());
    }
    auto e = single_view(SingleViewSetting::E, 300, 2);
    for (Eigen::Index i = 0; i < 300; ++i)
        if (e.labels[static_cast<std::size_t>(i)] == 1)
            CHECK(e.data(i, 1) > 15.0);
}

TEST_CASE("cauchy setting has heavy tails")
{
    // P(|y| > 50) per coordinate is about 0.0127, so 800 draws miss with probability below 1e-4
    auto d = single_view(SingleViewSetting::F, 400, 3);
    CHECK(d.data.cwiseAbs().maxCoeff() > 50.0);
}

TEST_CASE("multi-view generator")
{
    MultiViewSpec spec;
    spec.n = 30;
    spec.views = 500;
    spec.seed = 4;
    auto mv = multi_view(spec);
    CHECK(mv.data.rows() == 30);
    CHECK(mv.data.cols() == 1000);
    CHECK(mv.weights.size() == 5);
    for (const auto& w : mv.weights)
        CHECK(w.rowwise().sum().isOnes(1e-12));
    std::vector<int> freq(5, 0);
    for (int x : mv.pattern)
        freq[static_cast<std::size_t>(x)]++;
    // multinomial: expected 100, sd sqrt(500·0.2·0.8)
    const double sd = std::sqrt(500 * 0.2 * 0.8);
    for (int f : freq)
        CHECK(std::abs(f - 100.0) <= 3 * sd);

    spec.patterns = 1;
    auto single = multi_view(spec);
    CHECK(std::set<int>(single.pattern.begin(), single.pattern.end()) == std::set<int>{0});
}

TEST_CASE("consensus views")
{
    auto c = consensus_views(200, 5);
    CHECK(c.data.cols() == 10);
    CHECK(c.structured == std::vector<bool>{true, true, false, false, false, false, false, false, false, false});
    CHECK(std::set<int>(c.labels[1].begin(), c.labels[1].end()).size() == 3);
    for (std::size_t v = 2; v < 10; ++v)
        CHECK(c.labels[v] == Labels(200, 0));
    CHECK(consensus_views(200, 5).data == c.data);
}

TEST_CASE("column screening")
{
    Matrix m(4, 4);
    m << 1, 1, 5, 0,
         1, 1, 5, 0,
         1, 1, 5, 3,
         101, 2, 5, 0;
    auto top = screen_columns(m, 4);
    CHECK(top == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(screen_columns(m, 1) == std::vector<std::size_t>{0});

    Matrix swapped(4, 2);
    swapped.col(0) = m.col(1);
    swapped.col(1) = m.col(0);
    CHECK(screen_columns(swapped, 2) == std::vector<std::size_t>{1, 0});
    CHECK_THROWS_AS(screen_columns(m, 5), std::invalid_argument);
}
