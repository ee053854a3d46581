#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "test_support.hpp"
#include "tmset/commands.hpp"
#include "tmset/specfile.hpp"

using namespace tmset;
using namespace testsup;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tmset_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("spec file round-trip: ruled") {
    auto spec = families::preset("half-dim", 12);
    auto doc = emit_spec(spec);
    auto loaded = parse_spec_text(doc.dump());
    CHECK(emit_spec(loaded.spec).dump() == doc.dump());
    CHECK(loaded.spec.depth() == 12);
    CHECK(loaded.digest == spec_digest(spec));
}

TEST_CASE("spec file round-trip: finite") {
    Scale scale(std::vector<std::uint64_t>(6, 2));
    auto spec = SkeletonSpec::from_layers(scale, ruler_alt_layers6());
    auto doc = emit_spec(spec);
    auto loaded = parse_spec_text(doc.dump());
    CHECK(emit_spec(loaded.spec).dump() == doc.dump());
    for (std::int64_t n = -20; n <= 20; ++n) {
        auto a = spec.eval(n, 6);
        auto b = loaded.spec.eval(n, 6);
        CHECK(a.determined() == b.determined());
    }
}

TEST_CASE("spec file errors carry structured messages") {
    CHECK_THROWS_WITH_AS(
        parse_spec_text(R"({"version":1,"backend":"finite","scale":[4,4],
            "layers":[{"level":1,"filled":[{"residue":5,"symbol":1}]}]})"),
        doctest::Contains("residue 5 >= p_1 = 4"), Error);
    CHECK_THROWS_AS(parse_spec_text(R"({"version":2,"backend":"finite"})"),
                    Error);
    CHECK_THROWS_AS(parse_spec_text("not json at all"), Error);
    CHECK_THROWS_AS(
        parse_spec_text(
            R"({"version":1,"backend":"ruled","family":"nope","depth":4})"),
        Error);
    CHECK_THROWS_AS(
        parse_spec_text(R"({"version":1,"backend":"finite","scale":[4],
            "layers":[{"level":1,"filled":[
                {"residue":1,"symbol":1},{"residue":1,"symbol":0}]}]})"),
        Error);
}

TEST_CASE("gen then analyze: regularity and boundary measure") {
    TempDir dir;
    Options gen;
    gen.family = "ruler-alt";
    gen.depth = 24;
    gen.out = dir.file("ruler.json");
    auto gen_res = run_gen(gen);
    CHECK(gen_res.exit_code == 0);

    Options analyze;
    analyze.spec_path = gen.out;
    analyze.lmax = 20;
    auto res = run_analyze(analyze);
    CHECK(res.exit_code == 0);
    CHECK(res.report.results["regularity"]["verdict"] == "regular");
    CHECK(res.report.results["boundary_measure"]["hi"]["rat"] ==
          "1/1048576");
    CHECK(res.report.results["boundary_measure"]["lo"]["rat"] == "0/1");
}

TEST_CASE("analyze on fat-cantor at lmax 40") {
    TempDir dir;
    Options gen;
    gen.family = "fat-cantor";
    gen.depth = 40;
    gen.out = dir.file("fat.json");
    run_gen(gen);

    Options analyze;
    analyze.spec_path = gen.out;
    analyze.lmax = 40;
    auto res = run_analyze(analyze);
    CHECK(res.report.results["regularity"]["verdict"] == "irregular");
    const std::string width =
        res.report.results["boundary_measure"]["width_dec"];
    // Width around 2.6e-13, well under 1e-6.
    CHECK(width.find("e-13") != std::string::npos);
}

TEST_CASE("project command: MATCH and exit codes") {
    TempDir dir;
    Options gen;
    gen.family = "ruler-alt";
    gen.depth = 24;
    gen.out = dir.file("ruler.json");
    run_gen(gen);

    Options project;
    project.spec_path = gen.out;
    project.range = {{0, 9}};
    auto res = run_project(project);
    CHECK(res.exit_code == 0);
    CHECK(res.report.results["crosscheck"] == "MATCH");
    CHECK(res.report.results["points"] ==
          ordered_json::array({0, 1, 2, 4, 5, 6, 8, 9}));

    // Rebuilding the ruled spec at depth 3 leaves holes in the range.
    Options shallow = project;
    shallow.depth = 3;
    auto bad = run_project(shallow);
    CHECK(bad.exit_code == 4);
    CHECK(!bad.report.ok);
}

TEST_CASE("dim command reports the exact half-dim slope") {
    TempDir dir;
    Options gen;
    gen.family = "half-dim";
    gen.depth = 16;
    gen.out = dir.file("half.json");
    run_gen(gen);

    Options dim;
    dim.spec_path = gen.out;
    dim.lmax = 10;
    auto res = run_dim(dim);
    CHECK(res.exit_code == 0);
    for (const auto& row : res.report.results["boundary"]["rows"])
        CHECK(row["slope_exact"] == "1/2");
    CHECK(res.report.results["boundary"]["rows"][9]["raw_exact"] == "5/11");
}

TEST_CASE("dim command accepts a metric file") {
    TempDir dir;
    Options gen;
    gen.family = "ruler-alt";
    gen.depth = 12;
    gen.out = dir.file("ruler.json");
    run_gen(gen);

    {
        std::ofstream m(dir.file("metric.json"));
        m << R"({"diameters":["1/2","1/4","1/8","1/16","1/32","1/64"]})";
    }
    Options dim;
    dim.spec_path = gen.out;
    dim.metric = dir.file("metric.json");
    dim.lmax = 6;
    auto res = run_dim(dim);
    // d_l = 1/p_{l+1} would halve the ratio; with d_l = 1/p_l the ambient
    // ratio is exactly 1.
    CHECK(res.report.results["ambient"]["rows"][3]["ambient_exact"] == "1/1");
}

TEST_CASE("verify command: pass on ruler-alt, fail on bad coverage") {
    TempDir dir;
    Options gen;
    gen.family = "ruler-alt";
    gen.depth = 12;
    gen.out = dir.file("ruler.json");
    run_gen(gen);

    Options verify;
    verify.spec_path = gen.out;
    verify.range = {{-100, 100}};
    auto res = run_verify(verify);
    CHECK(res.exit_code == 0);
    CHECK(res.report.ok);

    Options gen_bad;
    gen_bad.family = "bad-coverage";
    gen_bad.depth = 16;
    gen_bad.out = dir.file("bad.json");
    run_gen(gen_bad);

    Options verify_bad;
    verify_bad.spec_path = gen_bad.out;
    verify_bad.range = {{-10, 10}};
    auto bad = run_verify(verify_bad);
    CHECK(bad.exit_code == 1);
    CHECK(!bad.report.ok);
    CHECK(bad.report.results["validation"]["uncovered"] ==
          ordered_json::array({-1}));
}

TEST_CASE("window command explicit flag obeys the budget") {
    TempDir dir;
    Options gen;
    gen.family = "fat-cantor";
    gen.depth = 8;
    gen.out = dir.file("fat.json");
    run_gen(gen);

    Options window;
    window.spec_path = gen.out;
    window.lmax = 2;
    window.explicit_sets = true;
    auto res = run_window(window);
    CHECK(res.exit_code == 0);
    CHECK(res.report.results["levels"][1]["u_count"] == "10");
    CHECK(res.report.results["levels"][1]["u_residues"].size() == 10);

    Options over = window;
    over.lmax = 8;
    CHECK_THROWS_AS(run_window(over), Error);
}

TEST_CASE("reports render identically across repeated runs") {
    TempDir dir;
    Options gen;
    gen.family = "half-dim";
    gen.depth = 12;
    gen.out = dir.file("half.json");
    run_gen(gen);

    for (const std::string format : {"json", "csv"}) {
        Options analyze;
        analyze.spec_path = gen.out;
        analyze.lmax = 10;
        analyze.format = format;
        auto a = run_analyze(analyze);
        auto b = run_analyze(analyze);
        CHECK(a.report.render(format) == b.report.render(format));
    }
}

TEST_CASE("gen writes a canonical file that reparses to the same digest") {
    TempDir dir;
    Options gen;
    gen.family = "frac-dim";
    gen.q = 8;
    gen.holes = {2, 3, 5};
    gen.depth = 10;
    gen.out = dir.file("frac.json");
    auto res = run_gen(gen);
    CHECK(res.exit_code == 0);

    auto loaded = load_spec_file(gen.out);
    CHECK(loaded.digest == res.report.spec_digest);
    const std::string text = slurp(gen.out);
    CHECK(text == loaded.canonical.dump(2) + "\n");
}
