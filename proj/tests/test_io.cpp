#include "doctest.h"

#include "lsp/datagen.hpp"
#include "lsp/io.hpp"

#include <filesystem>
#include <fstream>

#include <unistd.h>

using namespace lsp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("lsp_io_" + std::to_string(::getpid())))
    {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream(path) << text;
}

} // namespace

TEST_CASE("csv round trip is exact")
{
    TempDir dir;
    Matrix m(3, 2);
    m << 0.1, -1e-300, 1.0 / 3.0, 12345.678901234567, -0.0, 2.5e17;
    write_csv(dir.file("m.csv"), m, {"a", "b"});
    auto t = read_csv(dir.file("m.csv"));
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    CHECK(t.values == m);

    write_csv(dir.file("plain.csv"), m);
    CHECK(read_csv(dir.file("plain.csv")).header.empty());
}

TEST_CASE("csv errors")
{
    TempDir dir;
    CHECK_THROWS_AS(read_csv(dir.file("missing.csv")), IoError);

    write_text(dir.file("empty.csv"), "");
    try {
        read_csv(dir.file("empty.csv"));
        FAIL("expected an exception");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("empty.csv") != std::string::npos);
    }

    write_text(dir.file("header_only.csv"), "x,y\n");
    CHECK_THROWS_AS(read_csv(dir.file("header_only.csv")), IoError);

    write_text(dir.file("ragged.csv"), "1,2\n3\n");
    CHECK_THROWS_AS(read_csv(dir.file("ragged.csv")), IoError);

    write_text(dir.file("text.csv"), "1,2\n3,abc\n");
    CHECK_THROWS_AS(read_csv(dir.file("text.csv")), IoError);
}

TEST_CASE("label files")
{
    TempDir dir;
    write_labels_csv(dir.file("l.csv"), {{0, 1, 1}, {2, 2, 0}}, {"a", "b"}, 1);
    std::ifstream in(dir.file("l.csv"));
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all == "a,b\n1,3\n2,3\n2,1\n");
}

TEST_CASE("fit state round trip")
{
    TempDir dir;
    auto data = single_view(SingleViewSetting::A, 30, 2);
    auto t = SimilarityTensor::build({ViewData{data.data, 0}}, {});
    ModelConfig c;
    c.restarts = 1;
    c.max_em_iterations = 3;
    c.seed = 11;
    auto st = fit(t, c);
    save_fit_state(dir.file("state.txt"), st);
    auto back = load_fit_state(dir.file("state.txt"));
    CHECK(back.config.g == st.config.g);
    CHECK(back.config.seed == 11);
    CHECK(back.components[0].logits() == st.components[0].logits());
    CHECK(back.components[0].weights() == st.components[0].weights());
    CHECK(back.lambda.values == st.lambda.values);
    CHECK(back.eta.values == st.eta.values);
    CHECK(back.loss_history == st.loss_history);
    CHECK(back.iterations == st.iterations);
    CHECK(back.converged == st.converged);

    write_text(dir.file("bad.txt"), "not a state\n");
    CHECK_THROWS_AS(load_fit_state(dir.file("bad.txt")), IoError);
}
