#include "doctest.h"
#include "oracles.hpp"

#include "lsp/model.hpp"
#include "lsp/partition.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace lsp;

TEST_CASE("cluster graph round trip")
{
    Labels labels{2, 0, 2, 1, 0};
    auto g = ClusterGraph::from_labels(labels);
    CHECK(g.is_transitive());
    CHECK(g.linked(0, 2));
    CHECK_FALSE(g.linked(0, 1));
    CHECK(g.labels() == oracle::canonical(labels));

    ClusterGraph broken(3);
    broken.set(0, 1, true);
    broken.set(1, 2, true);
    CHECK_FALSE(broken.is_transitive());
}

TEST_CASE("sampled graphs are always transitive")
{
    std::mt19937_64 rng(4);
    Matrix p = oracle::random_similarity(8, rng, 0.05, 0.95);
    p.diagonal().setOnes();
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        auto g = sample_partition(p, seed);
        REQUIRE(g.is_transitive());
    }
}

TEST_CASE("sampler matches the exact three-item distribution")
{
    Matrix p(3, 3);
    p << 1, 0.7, 0.2, 0.7, 1, 0.4, 0.2, 0.4, 1;
    auto exact = oracle::partition_distribution(p);
    double total = 0;
    for (auto& [k, v] : exact)
        total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(exact.size() == 5);

    const int draws = 20000;
    std::map<Labels, int> counts;
    std::mt19937_64 rng(99);
    for (int i = 0; i < draws; ++i)
        counts[sample_partition_labels(p, rng)]++;

    double stat = 0;
    for (auto& [k, prob] : exact) {
        const double expected = prob * draws;
        const double diff = counts[k] - expected;
        stat += diff * diff / expected;
    }
    CHECK(counts.size() == exact.size());
    boost::math::chi_squared dist(static_cast<double>(exact.size() - 1));
    CHECK(boost::math::cdf(boost::math::complement(dist, stat)) > 0.01);
}

TEST_CASE("partition loss")
{
    CHECK(partition_loss(Labels{0, 0, 1, 1}, Labels{1, 1, 0, 0}) == doctest::Approx(0.0));
    CHECK(partition_loss(Labels{0, 0, 1, 1}, Labels{0, 1, 0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("bound right-hand side")
{
    CHECK(bound_complexity(2) ==
          doctest::Approx(std::log(std::exp(1.0 / 24) * std::sqrt(std::numbers::pi) + 2)).epsilon(1e-14));

    Matrix p = two_block_matrix(4, 0.8, 0.3);
    const double expected = 0.5 * (std::log(std::exp(1.0 / 24) * std::sqrt(std::numbers::pi) + 2) - std::log(0.1));
    CHECK(bound_rhs(p, {p, p}, 2, 0.1) == doctest::Approx(expected).epsilon(1e-14));

    std::mt19937_64 rng(1);
    Matrix s = oracle::random_similarity(4, rng);
    double kl = 0;
    for (int i = 1; i < 4; ++i)
        for (int j = 0; j < i; ++j)
            kl += oracle::kl(p(i, j), s(i, j));
    CHECK(divergence_sum(p, {s}) == doctest::Approx(kl).epsilon(1e-13));
    CHECK(bound_rhs(p, {s, p, p}, 3, 0.2) ==
          doctest::Approx((kl / 3 + bound_complexity(3) - std::log(0.2)) / 3).epsilon(1e-13));

    CHECK_THROWS_AS(bound_rhs(p, {p}, 1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(bound_rhs(p, {p, p}, 2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(bound_rhs(p, {p, p}, 2, 0.0), std::invalid_argument);
}

TEST_CASE("bound verification on a small run")
{
    BoundOptions o;
    o.replications = 20;
    o.risk_samples = 50;
    o.generalization_draws = 500;
    o.seed = 3;
    auto r = verify_theorem(o);
    CHECK(r.records.size() == 20);
    CHECK(r.evaluated + r.skipped == 20);
    for (const auto& rec : r.records)
        if (!rec.skipped) {
            CHECK(rec.lhs >= 0.0);
            CHECK(rec.holds == (rec.lhs <= rec.rhs));
        }
    auto again = verify_theorem(o);
    CHECK(again.holds == r.holds);
    CHECK(again.mean_lhs == r.mean_lhs);

    o.delta = 1.5;
    CHECK_THROWS_AS(verify_theorem(o), std::invalid_argument);
}
