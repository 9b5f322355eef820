#include "lsp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lsp {

namespace {

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& text, double& out)
{
    const std::string t = trim(text);
    if (t.empty())
        return false;
    const char* first = t.data();
    if (*first == '+')
        ++first;
    const auto res = std::from_chars(first, t.data() + t.size(), out);
    return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    return out;
}

void expect(std::istream& in, const std::string& key, const std::string& path)
{
    std::string token;
    if (!(in >> token) || token != key)
        throw IoError("'" + path + "': expected '" + key + "' but found '" + token + "'");
}

template <class T>
T read_value(std::istream& in, const std::string& key, const std::string& path)
{
    expect(in, key, path);
    T value{};
    if (!(in >> value))
        throw IoError("'" + path + "': bad value for '" + key + "'");
    return value;
}

double read_double(std::istream& in, const std::string& path)
{
    std::string token;
    double value = 0.0;
    if (!(in >> token) || !parse_number(token, value))
        throw IoError("'" + path + "': expected a number, found '" + token + "'");
    return value;
}

std::optional<double> read_optional(std::istream& in, const std::string& key, const std::string& path)
{
    expect(in, key, path);
    std::string token;
    in >> token;
    if (token == "default")
        return std::nullopt;
    double value = 0.0;
    if (!parse_number(token, value))
        throw IoError("'" + path + "': bad value for '" + key + "'");
    return value;
}

} // namespace

std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvTable read_csv(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    CsvTable table;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = split_fields(trim(line));
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t c = 0; c < fields.size(); ++c)
            numeric = numeric && parse_number(fields[c], row[c]);
        if (!numeric) {
            if (rows.empty() && table.header.empty()) {
                for (const auto& f : fields)
                    table.header.push_back(trim(f));
                width = fields.size();
                continue;
            }
            throw IoError("'" + path + "' line " + std::to_string(line_no) + ": non-numeric field");
        }
        if (width == 0)
            width = row.size();
        if (row.size() != width)
            throw IoError("'" + path + "' line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                          " fields, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw IoError("'" + path + "' contains no data rows");
    table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < width; ++c)
            table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return table;
}

void write_csv(const std::string& path, const Matrix& values, const std::vector<std::string>& header)
{
    auto out = open_out(path);
    if (!header.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c)
            out << (c ? "," : "") << header[c];
        out << '\n';
    }
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c)
            out << (c ? "," : "") << format_double(values(r, c));
        out << '\n';
    }
    if (!out)
        throw IoError("failed while writing '" + path + "'");
}

void write_labels_csv(const std::string& path, const std::vector<Labels>& columns,
                      const std::vector<std::string>& header, int offset)
{
    auto out = open_out(path);
    if (!header.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c)
            out << (c ? "," : "") << header[c];
        out << '\n';
    }
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << columns[c][r] + offset;
        out << '\n';
    }
    if (!out)
        throw IoError("failed while writing '" + path + "'");
}

void save_fit_state(const std::string& path, const FitState& state)
{
    auto out = open_out(path);
    const ModelConfig& c = state.config;
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("default"); };
    out << "lsp-fit-state " << kFitStateVersion << '\n';
    out << "d " << c.d << "\ng " << c.g << '\n';
    out << "alpha_lambda " << opt(c.alpha_lambda) << '\n';
    out << "epsilon " << format_double(c.epsilon) << '\n';
    out << "reg_multiplier " << opt(c.reg_multiplier) << '\n';
    out << "smoothing " << format_double(c.smoothing) << '\n';
    out << "step_size " << format_double(c.adam.step_size) << '\n';
    out << "beta1 " << format_double(c.adam.beta1) << '\n';
    out << "beta2 " << format_double(c.adam.beta2) << '\n';
    out << "stability " << format_double(c.adam.stability) << '\n';
    out << "inner_iterations " << c.adam.inner_iterations << '\n';
    out << "convergence_window " << c.convergence_window << '\n';
    out << "convergence_tolerance " << format_double(c.convergence_tolerance) << '\n';
    out << "max_em_iterations " << c.max_em_iterations << '\n';
    out << "restarts " << c.restarts << '\n';
    out << "init_logit_scale " << format_double(c.init_logit_scale) << '\n';
    out << "seed " << c.seed << '\n';
    out << "items " << state.items() << '\n';
    out << "views " << state.views() << '\n';
    out << "iterations " << state.iterations << '\n';
    out << "converged " << (state.converged ? 1 : 0) << '\n';
    out << "restart " << state.restart << '\n';
    out << "lambda";
    for (Eigen::Index l = 0; l < state.lambda.values.size(); ++l)
        out << ' ' << format_double(state.lambda.values[l]);
    out << "\ninit_assignment";
    for (int a : state.init_assignment)
        out << ' ' << a;
    out << "\neta\n";
    for (Eigen::Index v = 0; v < state.eta.values.rows(); ++v) {
        for (Eigen::Index l = 0; l < state.eta.values.cols(); ++l)
            out << (l ? " " : "") << format_double(state.eta.values(v, l));
        out << '\n';
    }
    for (std::size_t l = 0; l < state.components.size(); ++l) {
        out << "component " << l + 1 << '\n';
        const Matrix& logits = state.components[l].logits();
        for (Eigen::Index i = 0; i < logits.rows(); ++i) {
            for (Eigen::Index k = 0; k < logits.cols(); ++k)
                out << (k ? " " : "") << format_double(logits(i, k));
            out << '\n';
        }
    }
    out << "loss_history " << state.loss_history.size() << '\n';
    for (std::size_t t = 0; t < state.loss_history.size(); ++t)
        out << format_double(state.loss_history[t]) << '\n';
    out << "end\n";
    if (!out)
        throw IoError("failed while writing '" + path + "'");
}

FitState load_fit_state(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    const int version = read_value<int>(in, "lsp-fit-state", path);
    if (version != kFitStateVersion)
        throw IoError("'" + path + "': unsupported fit-state version " + std::to_string(version));
    FitState state;
    ModelConfig& c = state.config;
    c.d = read_value<int>(in, "d", path);
    c.g = read_value<int>(in, "g", path);
    c.alpha_lambda = read_optional(in, "alpha_lambda", path);
    expect(in, "epsilon", path);
    c.epsilon = read_double(in, path);
    c.reg_multiplier = read_optional(in, "reg_multiplier", path);
    expect(in, "smoothing", path);
    c.smoothing = read_double(in, path);
    expect(in, "step_size", path);
    c.adam.step_size = read_double(in, path);
    expect(in, "beta1", path);
    c.adam.beta1 = read_double(in, path);
    expect(in, "beta2", path);
    c.adam.beta2 = read_double(in, path);
    expect(in, "stability", path);
    c.adam.stability = read_double(in, path);
    c.adam.inner_iterations = read_value<int>(in, "inner_iterations", path);
    c.convergence_window = read_value<int>(in, "convergence_window", path);
    expect(in, "convergence_tolerance", path);
    c.convergence_tolerance = read_double(in, path);
    c.max_em_iterations = read_value<int>(in, "max_em_iterations", path);
    c.restarts = read_value<int>(in, "restarts", path);
    expect(in, "init_logit_scale", path);
    c.init_logit_scale = read_double(in, path);
    c.seed = read_value<std::uint64_t>(in, "seed", path);
    const auto n = read_value<Eigen::Index>(in, "items", path);
    const auto views = read_value<Eigen::Index>(in, "views", path);
    state.iterations = read_value<int>(in, "iterations", path);
    state.converged = read_value<int>(in, "converged", path) != 0;
    state.restart = read_value<int>(in, "restart", path);
    if (n < 1 || views < 1 || c.d < 1 || c.g < 1)
        throw IoError("'" + path + "': invalid dimensions");

    expect(in, "lambda", path);
    state.lambda.values.resize(c.d);
    for (int l = 0; l < c.d; ++l)
        state.lambda.values[l] = read_double(in, path);
    expect(in, "init_assignment", path);
    state.init_assignment.resize(static_cast<std::size_t>(views));
    for (auto& a : state.init_assignment)
        if (!(in >> a))
            throw IoError("'" + path + "': bad init_assignment");
    expect(in, "eta", path);
    state.eta.values.resize(views, c.d);
    for (Eigen::Index v = 0; v < views; ++v)
        for (int l = 0; l < c.d; ++l)
            state.eta.values(v, l) = read_double(in, path);
    for (int l = 0; l < c.d; ++l) {
        const int index = read_value<int>(in, "component", path);
        if (index != l + 1)
            throw IoError("'" + path + "': components out of order");
        Matrix logits(n, c.g);
        for (Eigen::Index i = 0; i < n; ++i)
            for (int k = 0; k < c.g; ++k)
                logits(i, k) = read_double(in, path);
        state.components.emplace_back(std::move(logits));
    }
    const auto count = read_value<std::size_t>(in, "loss_history", path);
    state.loss_history.resize(count);
    for (auto& x : state.loss_history)
        x = read_double(in, path);
    expect(in, "end", path);
    c.validate();
    return state;
}

} // namespace lsp
