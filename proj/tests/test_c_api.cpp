#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lsp/lsp.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

TEST_CASE("status reporting")
{
    lsp_matrix* m = nullptr;
    CHECK(lsp_matrix_create(2, 2, nullptr, nullptr) == LSP_ERR_INVALID_ARGUMENT);
    CHECK(std::string(lsp_last_error()).size() > 0);
    CHECK(std::string(lsp_status_name(LSP_ERR_IO)) == "i/o error");
    REQUIRE(lsp_matrix_create(2, 2, nullptr, &m) == LSP_OK);
    CHECK(lsp_matrix_get(m, 1, 1) == 0.0);
    lsp_matrix_destroy(m);
    m = nullptr;
    CHECK(std::string(lsp_version()) == "1.0.0");

    CHECK(lsp_matrix_read_csv("/nonexistent/file.csv", &m) == LSP_ERR_IO);
    CHECK(std::string(lsp_last_error()).find("file.csv") != std::string::npos);
}

TEST_CASE("matrix handles")
{
    const double values[] = {1, 2, 3, 4, 5, 6};
    lsp_matrix* m = nullptr;
    REQUIRE(lsp_matrix_create(2, 3, values, &m) == LSP_OK);
    CHECK(lsp_matrix_rows(m) == 2);
    CHECK(lsp_matrix_cols(m) == 3);
    CHECK(lsp_matrix_get(m, 1, 0) == 4.0);

    double out[6];
    CHECK(lsp_matrix_copy_to(m, out, 5) == LSP_ERR_OUT_OF_RANGE);
    REQUIRE(lsp_matrix_copy_to(m, out, 6) == LSP_OK);
    CHECK(out[5] == 6.0);

    const size_t cols[] = {2, 0};
    lsp_matrix* sel = nullptr;
    REQUIRE(lsp_matrix_select_columns(m, cols, 2, &sel) == LSP_OK);
    CHECK(lsp_matrix_get(sel, 0, 0) == 3.0);
    CHECK(lsp_matrix_get(sel, 1, 1) == 4.0);
    const size_t bad[] = {3};
    lsp_matrix* none = nullptr;
    CHECK(lsp_matrix_select_columns(m, bad, 1, &none) != LSP_OK);
    lsp_matrix_destroy(sel);
    lsp_matrix_destroy(m);
    lsp_matrix_destroy(nullptr);
}

TEST_CASE("fit and estimate through the C interface")
{
    const size_t n = 60;
    lsp_matrix* data = nullptr;
    std::vector<int32_t> truth(n);
    REQUIRE(lsp_simulate_single_view('a', n, 3, &data, truth.data(), truth.size()) == LSP_OK);

    lsp_similarity_options so;
    lsp_similarity_options_default(&so);
    lsp_similarity* s = nullptr;
    const size_t starts[] = {0}, widths[] = {2};
    REQUIRE(lsp_similarity_build(data, starts, widths, 1, &so, &s) == LSP_OK);
    CHECK(lsp_similarity_views(s) == 1);
    CHECK(lsp_similarity_items(s) == n);

    lsp_fit_options fo;
    lsp_fit_options_default(&fo);
    fo.restarts = 1;
    fo.seed = 5;
    lsp_fit* fit = nullptr;
    REQUIRE(lsp_fit_run(s, &fo, &fit) == LSP_OK);
    CHECK(lsp_fit_items(fit) == n);
    CHECK(lsp_fit_g(fit) == 2);

    const size_t h = lsp_fit_history_length(fit);
    REQUIRE(h > 0);
    std::vector<double> hist(h);
    REQUIRE(lsp_fit_history(fit, hist.data(), h) == LSP_OK);
    double loss = 0;
    REQUIRE(lsp_fit_reg_loss(fit, s, &loss) == LSP_OK);
    CHECK(loss == doctest::Approx(hist.back()).epsilon(1e-12));

    lsp_estimate* est = nullptr;
    REQUIRE(lsp_estimate_run(fit, 0, &est) == LSP_OK);
    std::vector<int32_t> labels(n);
    REQUIRE(lsp_estimate_joint_labels(est, 0, labels.data(), n) == LSP_OK);
    double score = 0;
    REQUIRE(lsp_nmi(labels.data(), truth.data(), n, &score) == LSP_OK);
    CHECK(score == 1.0);
    CHECK(lsp_estimate_g_hat(est, 0) == 2);

    lsp_matrix* p = nullptr;
    lsp_matrix* oracle = nullptr;
    REQUIRE(lsp_estimate_coassignment(est, lsp_estimate_x_hat(est, 0), &p) == LSP_OK);
    REQUIRE(lsp_oracle_coassignment('a', data, &oracle) == LSP_OK);
    double mad = 1;
    REQUIRE(lsp_mad(p, oracle, &mad) == LSP_OK);
    CHECK(mad <= 0.1);

    const std::string path = "c_api_state_" + std::to_string(reinterpret_cast<uintptr_t>(fit)) + ".txt";
    REQUIRE(lsp_fit_save(fit, path.c_str()) == LSP_OK);
    lsp_fit* loaded = nullptr;
    REQUIRE(lsp_fit_load(path.c_str(), &loaded) == LSP_OK);
    std::remove(path.c_str());
    double loaded_loss = 0;
    REQUIRE(lsp_fit_reg_loss(loaded, s, &loaded_loss) == LSP_OK);
    CHECK(loaded_loss == loss);

    CHECK(lsp_estimate_coassignment(est, 7, &p) == LSP_ERR_OUT_OF_RANGE);

    lsp_fit_destroy(loaded);
    lsp_matrix_destroy(p);
    lsp_matrix_destroy(oracle);
    lsp_estimate_destroy(est);
    lsp_fit_destroy(fit);
    lsp_similarity_destroy(s);
    lsp_matrix_destroy(data);
}

TEST_CASE("bad fit options are rejected")
{
    lsp_matrix* data = nullptr;
    int32_t labels[20];
    REQUIRE(lsp_simulate_single_view('b', 20, 1, &data, labels, 20) == LSP_OK);
    lsp_similarity* s = nullptr;
    REQUIRE(lsp_similarity_build(data, nullptr, nullptr, 0, nullptr, &s) == LSP_OK);
    CHECK(lsp_similarity_views(s) == 2);
    lsp_fit_options fo;
    lsp_fit_options_default(&fo);
    fo.g = 0;
    lsp_fit* fit = nullptr;
    CHECK(lsp_fit_run(s, &fo, &fit) == LSP_ERR_INVALID_ARGUMENT);
    CHECK(fit == nullptr);
    lsp_similarity_destroy(s);
    lsp_matrix_destroy(data);
}

TEST_CASE("bound helpers")
{
    const double p[] = {1, 0.5, 0.5, 1};
    lsp_matrix* m = nullptr;
    REQUIRE(lsp_matrix_create(2, 2, p, &m) == LSP_OK);
    const lsp_matrix* sims[] = {m, m};
    double rhs = 0;
    REQUIRE(lsp_bound_rhs(m, sims, 2, 2, 0.1, &rhs) == LSP_OK);
    CHECK(rhs == doctest::Approx(0.5 * (std::log(std::exp(1.0 / 24) * std::sqrt(M_PI) + 2) - std::log(0.1))));
    CHECK(lsp_bound_rhs(m, sims, 2, 2, 1.5, &rhs) == LSP_ERR_INVALID_ARGUMENT);
    lsp_matrix_destroy(m);

    lsp_bound_options bo;
    lsp_bound_options_default(&bo);
    bo.replications = 5;
    bo.risk_samples = 20;
    bo.generalization_draws = 100;
    lsp_bound_report* r = nullptr;
    REQUIRE(lsp_bound_verify(&bo, &r) == LSP_OK);
    CHECK(lsp_bound_report_records(r) == 5);
    lsp_bound_summary sum;
    REQUIRE(lsp_bound_report_summary(r, &sum) == LSP_OK);
    CHECK(sum.evaluated + sum.skipped == 5);
    lsp_bound_record rec;
    CHECK(lsp_bound_report_record(r, 5, &rec) == LSP_ERR_OUT_OF_RANGE);
    lsp_bound_report_destroy(r);
}
