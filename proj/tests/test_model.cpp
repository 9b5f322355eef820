#include "doctest.h"
#include "instances.hpp"
#include "oracles.hpp"

#include "lsp/datagen.hpp"
#include "lsp/initialization.hpp"
#include "lsp/metrics.hpp"
#include "lsp/model.hpp"
#include "lsp/postprocess.hpp"

#include <cmath>
#include <random>

using namespace lsp;

TEST_CASE("Bernoulli divergence")
{
    CHECK(kl_bernoulli(0.3, 0.3) == doctest::Approx(0.0));
    CHECK(kl_bernoulli(0.5, 0.25) == doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0)));
    CHECK(kl_bernoulli(0.5, 0.25) == doctest::Approx(0.14384).epsilon(1e-4));
    CHECK(kl_bernoulli(0.0, 0.5) == doctest::Approx(std::log(2.0)));
    CHECK(kl_bernoulli(1.0, 0.5) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(kl_bernoulli(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(kl_bernoulli(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("simplex weights stay on the simplex")
{
    std::mt19937_64 rng(4);
    SimplexWeightMatrix w(oracle::random_logits(7, 4, rng, 30.0));
    for (Eigen::Index i = 0; i < 7; ++i)
        CHECK(std::abs(w.weights().row(i).sum() - 1.0) <= 1e-12);
    CHECK((w.weights().array() > 0).all());

    Matrix target(2, 3);
    target << 0.2, 0.3, 0.5, 0.6, 0.3, 0.1;
    auto back = SimplexWeightMatrix::from_weights(target);
    CHECK((back.weights() - target).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("co-assignment matrix")
{
    SUBCASE("one cluster")
    {
        Matrix w = Matrix::Constant(4, 3, 1e-9);
        w.col(0).setConstant(1 - 2e-9);
        Matrix p = coassignment_matrix(SimplexWeightMatrix::from_weights(w));
        CHECK((p.array() - 1.0).abs().maxCoeff() < 1e-8);
    }
    SUBCASE("disjoint clusters")
    {
        Matrix w(2, 2);
        w << 1 - 1e-12, 1e-12, 1e-12, 1 - 1e-12;
        CHECK(coassignment_matrix(SimplexWeightMatrix::from_weights(w))(0, 1) < 1e-11);
    }
    SUBCASE("uniform rows")
    {
        SimplexWeightMatrix w(Matrix::Zero(3, 4));
        CHECK(coassignment_matrix(w)(0, 2) == doctest::Approx(0.25));
    }
    SUBCASE("PSD and rank at most g")
    {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 10; ++t) {
            SimplexWeightMatrix w(oracle::random_logits(12, 3, rng));
            Matrix p = coassignment_matrix(w);
            Eigen::SelfAdjointEigenSolver<Matrix> es(p);
            CHECK(es.eigenvalues().minCoeff() >= -1e-10);
            CHECK((es.eigenvalues().array() > 1e-10).count() <= 3);
        }
    }
}

TEST_CASE("data-fit loss")
{
    std::mt19937_64 rng(3);
    Matrix s = oracle::random_similarity(4, rng);
    SimilarityTensor t({s}, 1e-6, 1 - 1e-6);
    Responsibilities eta{Matrix::Ones(1, 1)};
    CHECK(data_fit_loss({s}, t, eta) == doctest::Approx(0.0));

    Matrix s2(2, 2), p2(2, 2);
    s2 << 1 - 1e-6, 0.25, 0.25, 1 - 1e-6;
    p2 << 1, 0.5, 0.5, 1;
    SimilarityTensor t2({s2}, 1e-6, 1 - 1e-6);
    CHECK(data_fit_loss({p2}, t2, eta) == doctest::Approx(0.14384).epsilon(1e-4));

    Responsibilities split{Matrix::Constant(1, 2, 0.5)};
    CHECK(data_fit_loss({p2, p2}, t2, split) == doctest::Approx(data_fit_loss({p2}, t2, eta)));
}

TEST_CASE("group regularizer")
{
    const double eps = 1e-3;
    Matrix w(5, 2);
    w.col(0).setConstant(std::exp(1.0) * eps);
    w.col(1).setConstant(1 - std::exp(1.0) * eps);
    const double second = std::sqrt(5.0) * std::log((1 - std::exp(1.0) * eps) / eps);
    CHECK(group_regularizer(SimplexWeightMatrix::from_weights(w), eps) - second ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));

    Matrix shrunk(3, 2);
    shrunk.col(0).setConstant(eps / 2);
    shrunk.col(1).setConstant(1 - eps / 2);
    CHECK(group_regularizer(SimplexWeightMatrix::from_weights(shrunk), eps) ==
          doctest::Approx(std::sqrt(3.0) * std::log((1 - eps / 2) / eps)).epsilon(1e-6));

    Matrix more = w;
    more(2, 0) *= 2;
    more(2, 1) = 1 - more(2, 0);
    CHECK(group_regularizer(SimplexWeightMatrix::from_weights(more), eps) >
          group_regularizer(SimplexWeightMatrix::from_weights(w), eps));
}

TEST_CASE("Dirichlet penalty")
{
    CHECK(dirichlet_penalty({Vector::Constant(3, 1.0 / 3)}, 1.0) == 0.0);
    Vector half(2);
    half << 0.5, 0.5;
    CHECK(dirichlet_penalty({half}, 0.5) == doctest::Approx(-0.69315).epsilon(1e-4));
    Vector peaked(2);
    peaked << 0.9, 0.1;
    CHECK(dirichlet_penalty({peaked}, 0.5) < dirichlet_penalty({half}, 0.5));
}

TEST_CASE("regularized loss is additive")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto inst = oracle::random_instance(6, 3, 2, 3, seed);
        CHECK(reg_loss(inst.state, inst.s) == doctest::Approx(oracle::direct_reg_loss(inst.state, inst.s)).epsilon(1e-12));
    }
}

TEST_CASE("E-step")
{
    SUBCASE("single candidate")
    {
        auto inst = oracle::random_instance(5, 2, 1, 4, 1);
        auto eta = e_step(inst.state, inst.s);
        CHECK((eta.values.array() == 1.0).all());
    }
    SUBCASE("identical candidates split evenly")
    {
        auto inst = oracle::random_instance(5, 2, 2, 2, 2);
        inst.state.components[1] = inst.state.components[0];
        inst.state.lambda = MixtureWeights::uniform(2);
        auto eta = e_step(inst.state, inst.s);
        CHECK(eta.values(0, 0) == doctest::Approx(0.5));
        CHECK(eta.values(1, 1) == doctest::Approx(0.5));
    }
    SUBCASE("two-term softmax")
    {
        Matrix s(2, 2);
        s << 1 - 1e-6, 0.25, 0.25, 1 - 1e-6;
        SimilarityTensor t({s}, 1e-6, 1 - 1e-6);
        FitState st;
        st.config.d = 2;
        st.config.g = 4;
        // uniform rows over four columns co-assign with probability 1/4
        st.components.emplace_back(Matrix::Zero(2, 4));
        // rows (x, y, y, y) with x^2 + 3y^2 = 1/2
        const double x = (2 + std::sqrt(12.0)) / 8, y = (1 - x) / 3;
        Matrix w(2, 4);
        w << x, y, y, y, x, y, y, y;
        st.components.push_back(SimplexWeightMatrix::from_weights(w));
        REQUIRE(coassignment_matrix(st.components[1])(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
        st.lambda = MixtureWeights::uniform(2);
        st.eta = Responsibilities{Matrix::Constant(1, 2, 0.5)};
        auto eta = e_step(st, t);
        CHECK(eta.values(0, 0) == doctest::Approx(1.0 / (1.0 + std::exp(-0.14384))).epsilon(1e-4));
        CHECK(eta.values(0, 0) == doctest::Approx(0.5359).epsilon(1e-4));
    }
    SUBCASE("retired components get zero mass")
    {
        auto inst = oracle::random_instance(5, 3, 3, 4, 3);
        inst.state.lambda.values << 0.5, 0.0, 0.5;
        auto eta = e_step(inst.state, inst.s);
        CHECK((eta.values.col(1).array() == 0.0).all());
        for (Eigen::Index v = 0; v < 4; ++v)
            CHECK(std::abs(eta.values.row(v).sum() - 1.0) <= 1e-12);
    }
    SUBCASE("large divergences stay finite")
    {
        Matrix s = Matrix::Constant(30, 30, 1e-6);
        s.diagonal().setConstant(1 - 1e-6);
        SimilarityTensor t({s}, 1e-6, 1 - 1e-6);
        FitState st;
        st.config.d = 2;
        st.config.g = 2;
        Matrix ones = Matrix::Constant(30, 2, -40.0);
        ones.col(0).setConstant(40.0);
        st.components = {SimplexWeightMatrix(ones), SimplexWeightMatrix(Matrix::Zero(30, 2))};
        st.lambda = MixtureWeights::uniform(2);
        auto eta = e_step(st, t);
        CHECK(eta.values.allFinite());
        CHECK(eta.values(0, 1) == doctest::Approx(1.0));
    }
}

TEST_CASE("kappa/gamma statistics")
{
    std::mt19937_64 rng(6);
    Matrix s = oracle::random_similarity(5, rng);
    SimilarityTensor t({s}, 1e-6, 1 - 1e-6);
    auto kg = precompute_kappa_gamma(t, Responsibilities{Matrix::Ones(1, 1)});
    CHECK(kg.gamma[0] == 1.0);
    CHECK(kg.kappa[0](3, 1) == doctest::Approx(-oracle::logit(s(3, 1))).epsilon(1e-14));
    CHECK(kg.kappa[0](1, 3) == kg.kappa[0](3, 1));
    CHECK(kg.kappa[0](2, 2) == 0.0);

    Matrix half = Matrix::Constant(4, 4, 0.5);
    half.diagonal().setConstant(1 - 1e-6);
    auto kh = precompute_kappa_gamma(SimilarityTensor({half}, 1e-6, 1 - 1e-6), Responsibilities{Matrix::Ones(1, 1)});
    CHECK(kh.kappa[0].cwiseAbs().maxCoeff() == 0.0);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = oracle::random_instance(7, 3, 3, 4, 100 + seed);
        auto k = precompute_kappa_gamma(inst.s, inst.state.eta);
        CHECK(std::abs(expected_loss(inst.state, k) - reg_loss(inst.state, inst.s)) < 1e-10);
    }
}

TEST_CASE("analytic gradient matches central differences")
{
    std::mt19937_64 pick(77);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(pick() % 4);
        const int g = 2 + static_cast<int>(pick() % 3);
        const int d = 1 + static_cast<int>(pick() % 3);
        auto inst = oracle::random_instance(n, g, d, 3, 500 + trial);
        auto kg = precompute_kappa_gamma(inst.s, inst.state.eta);
        auto grad = expected_loss_gradient(inst.state, kg);
        double worst = 0;
        for (int l = 0; l < d; ++l)
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < g; ++k) {
                    const double h = 1e-5;
                    FitState up = inst.state, down = inst.state;
                    Matrix lu = inst.state.components[l].logits(), ld = lu;
                    lu(i, k) += h;
                    ld(i, k) -= h;
                    up.components[l].set_logits(lu);
                    down.components[l].set_logits(ld);
                    const double fd = (reg_loss(up, inst.s) - reg_loss(down, inst.s)) / (2 * h);
                    worst = std::max(worst, std::abs(fd - grad[l](i, k)) / std::max(1.0, std::abs(fd)));
                }
        CHECK(worst < 1e-5);
    }
}

TEST_CASE("column permutation symmetry")
{
    auto inst = oracle::random_instance(6, 4, 2, 3, 9);
    const std::vector<int> perm{2, 0, 3, 1};
    FitState permuted = inst.state;
    for (auto& c : permuted.components) {
        Matrix l = c.logits(), out(l.rows(), l.cols());
        for (int k = 0; k < 4; ++k)
            out.col(k) = l.col(perm[static_cast<std::size_t>(k)]);
        c.set_logits(out);
    }
    CHECK(reg_loss(permuted, inst.s) == doctest::Approx(reg_loss(inst.state, inst.s)).epsilon(1e-13));

    auto g0 = expected_loss_gradient(inst.state, precompute_kappa_gamma(inst.s, inst.state.eta));
    auto g1 = expected_loss_gradient(permuted, precompute_kappa_gamma(inst.s, permuted.eta));
    for (int k = 0; k < 4; ++k)
        CHECK((g1[0].col(k) - g0[0].col(perm[static_cast<std::size_t>(k)])).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("lambda mode update")
{
    Matrix eta(2, 2);
    eta << 1.0, 0.0, 0.5, 0.5;
    auto l = update_lambda({eta}, 1.0);
    CHECK(l.values[0] == doctest::Approx(0.75));
    CHECK(l.values[1] == doctest::Approx(0.25));

    Matrix small(1, 2);
    small << 0.2, 0.1;
    auto f = update_lambda({small}, 0.5);
    CHECK(f.values[0] == 1.0);
    CHECK(f.values[1] == 0.0);

    Matrix tie(1, 3);
    tie << 0.1, 0.1, 0.05;
    auto t = update_lambda({tie}, 0.2);
    CHECK(t.values[0] == 0.5);
    CHECK(t.values[1] == 0.5);
    CHECK(t.values[2] == 0.0);
}

TEST_CASE("M-step descends its objective")
{
    auto inst = oracle::random_instance(8, 3, 2, 3, 21);
    auto kg = precompute_kappa_gamma(inst.s, inst.state.eta);
    const double before = m_step_objective(inst.state, kg);
    std::vector<Matrix> shapes;
    for (const auto& c : inst.state.components)
        shapes.push_back(c.logits());
    Adam adam(inst.state.config.adam, shapes);
    descend(inst.state, kg, adam, 50);
    CHECK(m_step_objective(inst.state, kg) < before);
    for (const auto& c : inst.state.components)
        for (Eigen::Index i = 0; i < c.items(); ++i)
            CHECK(std::abs(c.weights().row(i).sum() - 1.0) <= 1e-12);
}

TEST_CASE("convergence rule")
{
    std::vector<double> h(101, 100.0);
    CHECK(has_converged(h, 100, 0.01));
    h.front() = 200.0;
    CHECK_FALSE(has_converged(h, 100, 0.01));
    CHECK_FALSE(has_converged(std::vector<double>(50, 1.0), 100, 0.01));
}

TEST_CASE("config validation")
{
    ModelConfig c;
    c.restarts = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.epsilon = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.alpha_lambda = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK(ModelConfig{}.multiplier(40) == 40.0);
    ModelConfig three;
    three.d = 4;
    CHECK(three.alpha() == 0.25);
}

TEST_CASE("fit")
{
    SUBCASE("one column has no free structure")
    {
        std::mt19937_64 rng(1);
        SimilarityTensor t({oracle::random_similarity(6, rng)}, 1e-6, 1 - 1e-6);
        ModelConfig c;
        c.g = 1;
        c.restarts = 1;
        auto st = fit(t, c);
        CHECK((coassignment_matrix(st.components[0]).array() == 1.0).all());
        CHECK(st.converged);
    }
    SUBCASE("separated clusters are recovered and runs repeat exactly")
    {
        auto data = single_view(SingleViewSetting::A, 60, 5);
        auto t = SimilarityTensor::build({ViewData{data.data, 0}}, {});
        ModelConfig c;
        c.restarts = 2;
        c.seed = 3;
        auto a = fit(t, c);
        auto b = fit(t, c);
        CHECK(a.loss_history == b.loss_history);
        CHECK(!a.loss_history.empty());
        auto est = estimate(a, 0);
        CHECK(nmi(est.views[0].joint_labels, data.labels) == 1.0);
        CHECK(a.loss_history.back() == doctest::Approx(reg_loss(a, t)).epsilon(1e-9));
    }
    SUBCASE("iteration cap is reported")
    {
        auto data = single_view(SingleViewSetting::B, 30, 2);
        auto t = SimilarityTensor::build({ViewData{data.data, 0}}, {});
        ModelConfig c;
        c.restarts = 1;
        c.max_em_iterations = 5;
        auto st = fit(t, c);
        CHECK(st.iterations == 5);
        CHECK_FALSE(st.converged);
        CHECK(st.loss_history.size() == 5);
    }
}
