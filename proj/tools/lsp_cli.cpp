// Command-line front end over the shared library's C interface.

#include "lsp/lsp.h"

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Deleter {
    void operator()(lsp_matrix* p) const { lsp_matrix_destroy(p); }
    void operator()(lsp_similarity* p) const { lsp_similarity_destroy(p); }
    void operator()(lsp_fit* p) const { lsp_fit_destroy(p); }
    void operator()(lsp_estimate* p) const { lsp_estimate_destroy(p); }
    void operator()(lsp_bound_report* p) const { lsp_bound_report_destroy(p); }
};

template <class T>
using Handle = std::unique_ptr<T, Deleter>;

void check(lsp_status status)
{
    if (status != LSP_OK)
        throw std::runtime_error(lsp_last_error());
}

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Manifest {
public:
    Manifest(fs::path dir, std::string command, std::uint64_t seed)
        : dir_(std::move(dir)), command_(std::move(command)), seed_(seed)
    {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_))
            throw std::runtime_error("cannot create output directory " + dir_.string());
    }

    std::string path(const std::string& name)
    {
        artifacts_.push_back(name);
        return (dir_ / name).string();
    }

    void write_text(const std::string& name, const std::string& text)
    {
        std::ofstream out(path(name), std::ios::binary);
        out << text;
        if (!out)
            throw std::runtime_error("cannot write " + (dir_ / name).string());
    }

    void finish()
    {
        std::ostringstream m;
        m << "command " << command_ << "\n";
        m << "seed " << seed_ << "\n";
        for (const auto& a : artifacts_)
            m << "artifact " << a << "\n";
        std::ofstream out(dir_ / "manifest.txt", std::ios::binary);
        out << m.str();
        if (!out)
            throw std::runtime_error("cannot write " + (dir_ / "manifest.txt").string());
    }

private:
    fs::path dir_;
    std::string command_;
    std::uint64_t seed_;
    std::vector<std::string> artifacts_;
};

void write_matrix(Manifest& mf, const std::string& name, const lsp_matrix* m, const std::string& prefix)
{
    std::vector<std::string> names;
    for (size_t j = 0; j < lsp_matrix_cols(m); ++j)
        names.push_back(prefix + std::to_string(j + 1));
    std::vector<const char*> header;
    for (const auto& s : names)
        header.push_back(s.c_str());
    check(lsp_matrix_write_csv(m, mf.path(name).c_str(), header.data(), header.size()));
}

void write_labels(Manifest& mf, const std::string& name, const std::vector<int32_t>& labels, size_t rows,
                  const std::vector<std::string>& names, int32_t offset = 1)
{
    std::vector<const char*> header;
    for (const auto& s : names)
        header.push_back(s.c_str());
    check(lsp_labels_write_csv(mf.path(name).c_str(), labels.data(), rows, names.size(), header.data(), offset));
}

std::vector<std::string> numbered(const std::string& prefix, size_t count)
{
    std::vector<std::string> out;
    for (size_t i = 0; i < count; ++i)
        out.push_back(prefix + std::to_string(i + 1));
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Flat key=value file; keys are long option names. Values given on the
// command line take precedence.
void apply_config(const std::string& path, CLI::App& root, CLI::App* sub)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
        if (!opt)
            opt = root.get_option_no_throw("--" + key);
        if (!opt || key == "config")
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (opt->count() > 0)
            continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

// "b:w,b:w,..." with 0-based column starts.
void parse_view_ranges(const std::string& spec, std::vector<size_t>& starts, std::vector<size_t>& widths)
{
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("bad view range '" + item + "' (expected start:width)");
        try {
            starts.push_back(std::stoul(item.substr(0, colon)));
            widths.push_back(std::stoul(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw std::runtime_error("bad view range '" + item + "' (expected start:width)");
        }
    }
}

struct SimulateArgs {
    std::string setting = "a";
    size_t n = 400;
    size_t views = 500;
    int patterns = 5;
    int clusters = 3;
    double alpha = 0.5;
    std::string out;
};

void run_simulate(const SimulateArgs& a, std::uint64_t seed)
{
    Manifest mf(a.out, "simulate " + a.setting, seed);
    lsp_matrix* raw = nullptr;
    if (a.setting.size() == 1 && a.setting[0] >= 'a' && a.setting[0] <= 'f') {
        std::vector<int32_t> labels(a.n);
        check(lsp_simulate_single_view(a.setting[0], a.n, seed, &raw, labels.data(), labels.size()));
        Handle<lsp_matrix> data(raw);
        write_matrix(mf, "data.csv", data.get(), "y");
        write_labels(mf, "truth.csv", labels, a.n, {"label"});
        lsp_matrix* oracle = nullptr;
        check(lsp_oracle_coassignment(a.setting[0], data.get(), &oracle));
        Handle<lsp_matrix> o(oracle);
        write_matrix(mf, "oracle.csv", o.get(), "item");
    } else if (a.setting == "multiview") {
        lsp_multiview_options opts;
        lsp_multiview_options_default(&opts);
        opts.n = a.n;
        opts.views = a.views;
        opts.patterns = a.patterns;
        opts.clusters = a.clusters;
        opts.dirichlet_alpha = a.alpha;
        opts.seed = seed;
        std::vector<int32_t> pattern(a.views), labels(a.n * a.views);
        check(lsp_simulate_multi_view(&opts, &raw, pattern.data(), pattern.size(), labels.data(), labels.size()));
        Handle<lsp_matrix> data(raw);
        write_matrix(mf, "data.csv", data.get(), "y");
        write_labels(mf, "truth.csv", labels, a.n, numbered("view", a.views));
        write_labels(mf, "patterns.csv", pattern, a.views, {"pattern"});
    } else if (a.setting == "consensus") {
        std::vector<int32_t> labels(a.n * 10), structured(10);
        check(lsp_simulate_consensus(a.n, seed, &raw, labels.data(), labels.size(), structured.data(),
                                     structured.size()));
        Handle<lsp_matrix> data(raw);
        write_matrix(mf, "data.csv", data.get(), "view");
        write_labels(mf, "truth.csv", labels, a.n, numbered("view", 10));
        write_labels(mf, "structured.csv", structured, 10, {"structured"}, 0);
    } else {
        throw std::runtime_error("unknown setting '" + a.setting + "' (expected a-f, multiview or consensus)");
    }
    mf.finish();
}

struct FitArgs {
    std::string input;
    std::string out;
    std::string views;
    size_t view_width = 0;
    lsp_similarity_options sim{};
    lsp_fit_options fit{};
};

void run_fit(FitArgs& a, std::uint64_t seed)
{
    a.fit.seed = seed;
    lsp_matrix* raw = nullptr;
    check(lsp_matrix_read_csv(a.input.c_str(), &raw));
    Handle<lsp_matrix> data(raw);

    std::vector<size_t> starts, widths;
    if (!a.views.empty() && a.view_width > 0)
        throw std::runtime_error("--views and --view-width are mutually exclusive");
    if (!a.views.empty()) {
        parse_view_ranges(a.views, starts, widths);
    } else if (a.view_width > 0) {
        const size_t cols = lsp_matrix_cols(data.get());
        if (cols % a.view_width != 0)
            throw std::runtime_error(a.input + ": " + std::to_string(cols) + " columns not divisible by view width " +
                                     std::to_string(a.view_width));
        for (size_t b = 0; b < cols; b += a.view_width) {
            starts.push_back(b);
            widths.push_back(a.view_width);
        }
    }

    lsp_similarity* sraw = nullptr;
    check(lsp_similarity_build(data.get(), starts.empty() ? nullptr : starts.data(),
                               widths.empty() ? nullptr : widths.data(), starts.size(), &a.sim, &sraw));
    Handle<lsp_similarity> sim(sraw);

    Manifest mf(a.out, "fit", seed);

    lsp_fit* fraw = nullptr;
    check(lsp_fit_run(sim.get(), &a.fit, &fraw));
    Handle<lsp_fit> fit(fraw);
    check(lsp_fit_save(fit.get(), mf.path("fit_state.txt").c_str()));

    lsp_estimate* eraw = nullptr;
    check(lsp_estimate_run(fit.get(), seed, &eraw));
    Handle<lsp_estimate> est(eraw);

    const size_t n = lsp_fit_items(fit.get());
    const size_t views = lsp_fit_views(fit.get());
    const int d = lsp_fit_d(fit.get());

    std::vector<int32_t> joint(n * views), pointwise(n * views);
    for (size_t v = 0; v < views; ++v) {
        check(lsp_estimate_joint_labels(est.get(), v, joint.data() + v * n, n));
        check(lsp_estimate_pointwise_labels(est.get(), v, pointwise.data() + v * n, n));
    }
    write_labels(mf, "labels.csv", joint, n, numbered("view", views));
    write_labels(mf, "pointwise_labels.csv", pointwise, n, numbered("view", views));

    std::vector<bool> used(static_cast<size_t>(d), false);
    for (size_t v = 0; v < views; ++v)
        used[static_cast<size_t>(lsp_estimate_x_hat(est.get(), v))] = true;
    for (int l = 0; l < d; ++l) {
        if (!used[static_cast<size_t>(l)])
            continue;
        lsp_matrix* p = nullptr;
        check(lsp_estimate_coassignment(est.get(), l, &p));
        Handle<lsp_matrix> ph(p);
        write_matrix(mf, "p_hat_" + std::to_string(l + 1) + ".csv", ph.get(), "item");
    }
    lsp_matrix* c = nullptr;
    check(lsp_estimate_consensus(est.get(), &c));
    Handle<lsp_matrix> consensus(c);
    write_matrix(mf, "consensus.csv", consensus.get(), "item");

    std::vector<double> lambda(static_cast<size_t>(d)), u(views);
    check(lsp_fit_lambda(fit.get(), lambda.data(), lambda.size()));
    check(lsp_estimate_consensus_weights(est.get(), u.data(), u.size()));
    std::vector<double> history(lsp_fit_history_length(fit.get()));
    check(lsp_fit_history(fit.get(), history.data(), history.size()));

    std::ostringstream views_csv;
    views_csv << "view,x_hat,g_hat,u\n";
    for (size_t v = 0; v < views; ++v)
        views_csv << v + 1 << "," << lsp_estimate_x_hat(est.get(), v) + 1 << "," << lsp_estimate_g_hat(est.get(), v)
                  << "," << num(u[v]) << "\n";
    mf.write_text("summary_views.csv", views_csv.str());

    std::ostringstream lambda_csv;
    lambda_csv << "component,lambda\n";
    for (int l = 0; l < d; ++l)
        lambda_csv << l + 1 << "," << num(lambda[static_cast<size_t>(l)]) << "\n";
    mf.write_text("lambda.csv", lambda_csv.str());

    std::ostringstream hist_csv;
    hist_csv << "iteration,loss\n";
    for (size_t t = 0; t < history.size(); ++t)
        hist_csv << t + 1 << "," << num(history[t]) << "\n";
    mf.write_text("loss_history.csv", hist_csv.str());

    std::ostringstream txt;
    txt << "items " << n << "\n";
    txt << "views " << views << "\n";
    txt << "d " << d << "\n";
    txt << "g " << lsp_fit_g(fit.get()) << "\n";
    txt << "d_hat " << lsp_estimate_d_hat(est.get()) << "\n";
    txt << "iterations " << lsp_fit_iterations(fit.get()) << "\n";
    txt << "converged " << lsp_fit_converged(fit.get()) << "\n";
    txt << "restart " << lsp_fit_restart(fit.get()) + 1 << "\n";
    txt << "final_loss " << (history.empty() ? std::string("nan") : num(history.back())) << "\n";
    txt << "consensus_fallback " << lsp_estimate_consensus_fallback(est.get()) << "\n";
    txt << "lambda";
    for (double x : lambda)
        txt << " " << num(x);
    txt << "\n";
    txt << "g_hat";
    for (size_t v = 0; v < views; ++v)
        txt << " " << lsp_estimate_g_hat(est.get(), v);
    txt << "\n";
    mf.write_text("summary.txt", txt.str());
    mf.finish();
}

struct BoundArgs {
    lsp_bound_options opts{};
    std::string out;
};

void run_verify_bound(BoundArgs& a, std::uint64_t seed)
{
    a.opts.seed = seed;
    lsp_bound_report* raw = nullptr;
    check(lsp_bound_verify(&a.opts, &raw));
    Handle<lsp_bound_report> report(raw);
    Manifest mf(a.out, "verify-bound", seed);

    std::ostringstream csv;
    csv << "replication,empirical_risk,generalization_risk,kl_sum,lhs,rhs,holds,skipped\n";
    for (size_t i = 0; i < lsp_bound_report_records(report.get()); ++i) {
        lsp_bound_record r;
        check(lsp_bound_report_record(report.get(), i, &r));
        csv << r.index + 1 << "," << num(r.empirical_risk) << "," << num(r.generalization_risk) << ","
            << num(r.kl_sum) << "," << num(r.lhs) << "," << num(r.rhs) << "," << r.holds << "," << r.skipped
            << "\n";
    }
    mf.write_text("bound_records.csv", csv.str());

    lsp_bound_summary s;
    check(lsp_bound_report_summary(report.get(), &s));
    std::ostringstream txt;
    txt << "n " << a.opts.n << "\n";
    txt << "views " << a.opts.views << "\n";
    txt << "delta " << num(a.opts.delta) << "\n";
    txt << "replications " << a.opts.replications << "\n";
    txt << "evaluated " << s.evaluated << "\n";
    txt << "skipped " << s.skipped << "\n";
    txt << "holds " << s.holds << "\n";
    txt << "holds_fraction " << num(s.holds_fraction) << "\n";
    txt << "mean_lhs " << num(s.mean_lhs) << "\n";
    txt << "mean_rhs " << num(s.mean_rhs) << "\n";
    mf.write_text("bound_summary.txt", txt.str());
    mf.finish();
    std::cout << "holds_fraction " << num(s.holds_fraction) << "\n";
}

struct MetricsArgs {
    std::string labels_a;
    std::string labels_b;
    size_t column_a = 0;
    size_t column_b = 0;
    std::string matrix_a;
    std::string matrix_b;
};

std::vector<int32_t> read_labels(const std::string& path, size_t column)
{
    int32_t* raw = nullptr;
    size_t count = 0;
    check(lsp_labels_read_csv(path.c_str(), column, &raw, &count));
    std::vector<int32_t> out(raw, raw + count);
    lsp_labels_free(raw);
    return out;
}

void run_metrics(const MetricsArgs& a)
{
    const bool labels = !a.labels_a.empty() || !a.labels_b.empty();
    const bool matrices = !a.matrix_a.empty() || !a.matrix_b.empty();
    if (!labels && !matrices)
        throw std::runtime_error("metrics needs --labels-a/--labels-b and/or --matrix-a/--matrix-b");
    if (labels) {
        if (a.labels_a.empty() || a.labels_b.empty())
            throw std::runtime_error("both --labels-a and --labels-b are required");
        const auto x = read_labels(a.labels_a, a.column_a);
        const auto y = read_labels(a.labels_b, a.column_b);
        if (x.size() != y.size())
            throw std::runtime_error("label files differ in length: " + std::to_string(x.size()) + " vs " +
                                     std::to_string(y.size()));
        double score = 0.0;
        check(lsp_nmi(x.data(), y.data(), x.size(), &score));
        std::cout << "nmi " << num(score) << "\n";
    }
    if (matrices) {
        if (a.matrix_a.empty() || a.matrix_b.empty())
            throw std::runtime_error("both --matrix-a and --matrix-b are required");
        lsp_matrix *ra = nullptr, *rb = nullptr;
        check(lsp_matrix_read_csv(a.matrix_a.c_str(), &ra));
        Handle<lsp_matrix> ma(ra);
        check(lsp_matrix_read_csv(a.matrix_b.c_str(), &rb));
        Handle<lsp_matrix> mb(rb);
        double score = 0.0;
        check(lsp_mad(ma.get(), mb.get(), &score));
        std::cout << "mad " << num(score) << "\n";
    }
}

struct ScreenArgs {
    std::string input;
    size_t top_v = 100;
    std::string out;
};

void run_screen(const ScreenArgs& a, std::uint64_t seed)
{
    lsp_matrix* raw = nullptr;
    check(lsp_matrix_read_csv(a.input.c_str(), &raw));
    Handle<lsp_matrix> data(raw);
    std::vector<size_t> cols(a.top_v);
    check(lsp_screen_columns(data.get(), a.top_v, cols.data(), cols.size()));
    lsp_matrix* sraw = nullptr;
    check(lsp_matrix_select_columns(data.get(), cols.data(), cols.size(), &sraw));
    Handle<lsp_matrix> screened(sraw);

    Manifest mf(a.out, "screen", seed);
    write_matrix(mf, "screened.csv", screened.get(), "col");
    std::ostringstream csv;
    csv << "rank,column\n";
    for (size_t r = 0; r < cols.size(); ++r)
        csv << r + 1 << "," << cols[r] + 1 << "\n";
    mf.write_text("columns.csv", csv.str());
    mf.finish();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Latent simplex position multi-view clustering"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(lsp_version()));

    std::uint64_t seed = 0;
    std::string config;
    app.add_option("--seed", seed, "Random seed for every stochastic step")->capture_default_str();
    app.add_option("--config", config, "Flat key=value file of option defaults");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Generate benchmark data and ground truth");
    simulate->add_option("--setting", sim.setting, "a-f, multiview or consensus")->capture_default_str();
    simulate->add_option("--n", sim.n, "Items")->capture_default_str();
    simulate->add_option("--views", sim.views, "Views (multiview)")->capture_default_str();
    simulate->add_option("--patterns", sim.patterns, "Latent parameterizations (multiview)")->capture_default_str();
    simulate->add_option("--clusters", sim.clusters, "Clusters per parameterization (multiview)")
        ->capture_default_str();
    simulate->add_option("--alpha", sim.alpha, "Dirichlet concentration of weight rows (multiview)")
        ->capture_default_str();
    simulate->add_option("--out", sim.out, "Output directory");

    FitArgs fa;
    lsp_similarity_options_default(&fa.sim);
    lsp_fit_options_default(&fa.fit);
    auto* fitc = app.add_subcommand("fit", "Fit the model to a CSV data matrix");
    fitc->add_option("--input", fa.input, "Data CSV (rows are items)");
    fitc->add_option("--out", fa.out, "Output directory");
    fitc->add_option("--views", fa.views, "View column ranges start:width,... (0-based starts)");
    fitc->add_option("--view-width", fa.view_width, "Consecutive views of this many columns");
    fitc->add_option("--quantile", fa.sim.quantile, "Row distance quantile for local bandwidths")
        ->capture_default_str();
    fitc->add_option("--s-min", fa.sim.s_min)->capture_default_str();
    fitc->add_option("--s-max", fa.sim.s_max)->capture_default_str();
    fitc->add_option("--d", fa.fit.d, "Maximum number of parameterizations")->capture_default_str();
    fitc->add_option("--g", fa.fit.g, "Maximum clusters per parameterization")->capture_default_str();
    fitc->add_option("--alpha-lambda", fa.fit.alpha_lambda, "Dirichlet concentration on lambda (0 = 1/d)")
        ->capture_default_str();
    fitc->add_option("--epsilon", fa.fit.epsilon)->capture_default_str();
    fitc->add_option("--reg-multiplier", fa.fit.reg_multiplier, "Multiplier on the group penalty (<0 = n)")
        ->capture_default_str();
    fitc->add_option("--smoothing", fa.fit.smoothing)->capture_default_str();
    fitc->add_option("--step-size", fa.fit.step_size)->capture_default_str();
    fitc->add_option("--beta1", fa.fit.beta1)->capture_default_str();
    fitc->add_option("--beta2", fa.fit.beta2)->capture_default_str();
    fitc->add_option("--stability", fa.fit.stability)->capture_default_str();
    fitc->add_option("--inner-iterations", fa.fit.inner_iterations)->capture_default_str();
    fitc->add_option("--window", fa.fit.convergence_window)->capture_default_str();
    fitc->add_option("--tolerance", fa.fit.convergence_tolerance)->capture_default_str();
    fitc->add_option("--max-iterations", fa.fit.max_em_iterations)->capture_default_str();
    fitc->add_option("--restarts", fa.fit.restarts)->capture_default_str();
    fitc->add_option("--init-scale", fa.fit.init_logit_scale)->capture_default_str();

    BoundArgs ba;
    lsp_bound_options_default(&ba.opts);
    auto* bound = app.add_subcommand("verify-bound", "Monte-Carlo check of the partition risk bound");
    bound->add_option("--n", ba.opts.n, "Items")->capture_default_str();
    bound->add_option("--views", ba.opts.views, "Views M (>= 2)")->capture_default_str();
    bound->add_option("--delta", ba.opts.delta, "Confidence level in (0,1)")->capture_default_str();
    bound->add_option("--replications", ba.opts.replications)->capture_default_str();
    bound->add_option("--risk-samples", ba.opts.risk_samples)->capture_default_str();
    bound->add_option("--generalization-draws", ba.opts.generalization_draws)->capture_default_str();
    bound->add_option("--truth-within", ba.opts.truth_within)->capture_default_str();
    bound->add_option("--truth-between", ba.opts.truth_between)->capture_default_str();
    bound->add_option("--model-within", ba.opts.model_within)->capture_default_str();
    bound->add_option("--model-between", ba.opts.model_between)->capture_default_str();
    bound->add_option("--mix", ba.opts.similarity_mix, "Weight of the sampled truth in each similarity")
        ->capture_default_str();
    bound->add_option("--out", ba.out, "Output directory");

    MetricsArgs ma;
    auto* metrics = app.add_subcommand("metrics", "NMI between label files, MAD between matrices");
    metrics->add_option("--labels-a", ma.labels_a);
    metrics->add_option("--labels-b", ma.labels_b);
    metrics->add_option("--column-a", ma.column_a, "0-based label column")->capture_default_str();
    metrics->add_option("--column-b", ma.column_b, "0-based label column")->capture_default_str();
    metrics->add_option("--matrix-a", ma.matrix_a);
    metrics->add_option("--matrix-b", ma.matrix_b);

    ScreenArgs sa;
    auto* screen = app.add_subcommand("screen", "Keep the top columns by sd/median");
    screen->add_option("--input", sa.input, "Data CSV");
    screen->add_option("--top-v", sa.top_v, "Columns to keep")->capture_default_str();
    screen->add_option("--out", sa.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config.empty())
            apply_config(config, app, sub);

        auto need = [&](const std::string& value, const char* flag) {
            if (value.empty())
                throw std::runtime_error(std::string(sub->get_name()) + ": " + flag + " is required");
        };

        if (sub == simulate) {
            need(sim.out, "--out");
            run_simulate(sim, seed);
        } else if (sub == fitc) {
            need(fa.input, "--input");
            need(fa.out, "--out");
            run_fit(fa, seed);
        } else if (sub == bound) {
            need(ba.out, "--out");
            run_verify_bound(ba, seed);
        } else if (sub == metrics) {
            run_metrics(ma);
        } else if (sub == screen) {
            need(sa.input, "--input");
            need(sa.out, "--out");
            run_screen(sa, seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "lsp: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
