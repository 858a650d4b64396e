#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rainbow/cli.hpp"
#include "rainbow/io.hpp"

using rainbow::cli::run;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("cli_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("gen writes constructions and prints the digest") {
    TempFile file("hexagon.rbf");
    auto res = run({"gen", "--construction", "hexagon", "--out", file.path});
    CHECK(res.exit_code == 0);
    CHECK(res.out.size() == 17);  // 16 hex digits + newline
    auto family = rainbow::io::load_family_file(file.path);
    CHECK(family.n() == 3);
    CHECK(family.graph_count() == 6);
}

TEST_CASE("gen random families pass check") {
    TempFile file("random.rbf");
    auto res = run({"gen", "--n", "4", "--graphs", "8", "--seed", "1", "--out", file.path});
    REQUIRE(res.exit_code == 0);
    CHECK(run({"check", file.path, "--role", "cycle"}).exit_code == 0);
}

TEST_CASE("gen n=2 produces the complete family") {
    TempFile file("tiny.rbf");
    REQUIRE(run({"gen", "--n", "2", "--graphs", "4", "--out", file.path}).exit_code == 0);
    auto family = rainbow::io::load_family_file(file.path);
    for (int g = 1; g <= 4; ++g) CHECK(family.edge_count(g) == 4);
}

TEST_CASE("gen rejects conflicting flags") {
    TempFile file("conflict.rbf");
    auto res = run({"gen", "--construction", "hexagon", "--seed", "3", "--out", file.path});
    CHECK(res.exit_code == 2);
}

TEST_CASE("check reports violations with exit 1") {
    TempFile file("blocks.rbf");
    REQUIRE(run({"gen", "--construction", "two-blocks", "--n", "4", "--out", file.path})
                .exit_code == 0);
    auto res = run({"check", file.path, "--role", "cycle"});
    CHECK(res.exit_code == 1);
    CHECK(res.out.find("violation") != std::string::npos);
    CHECK(res.out.find("verdict fail") != std::string::npos);
}

TEST_CASE("check rejects truncated files with exit 2") {
    TempFile file("trunc.rbf");
    {
        std::ofstream out(file.path, std::ios::binary);
        out << "rainbow-family 1\nn 3\ngraphs 2\ngraph 1\n";
    }
    auto res = run({"check", file.path, "--role", "cycle"});
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("line") != std::string::npos);
}

TEST_CASE("oracle exit codes: none on two-blocks, found on complete") {
    TempFile blocks("blocks2.rbf");
    REQUIRE(run({"gen", "--construction", "two-blocks", "--n", "4", "--out", blocks.path})
                .exit_code == 0);
    CHECK(run({"oracle", blocks.path, "--target", "ham"}).exit_code == 1);

    TempFile complete("complete.rbf");
    REQUIRE(run({"gen", "--construction", "complete", "--n", "4", "--graphs", "8", "--out",
                 complete.path})
                .exit_code == 0);
    CHECK(run({"oracle", complete.path, "--target", "cycle:6"}).exit_code == 0);
}

TEST_CASE("oracle rejects role mismatches") {
    TempFile pm("pmblocks.rbf");
    REQUIRE(run({"gen", "--construction", "pm-blocks", "--n", "4", "--out", pm.path}).exit_code ==
            0);
    CHECK(run({"oracle", pm.path, "--target", "pm"}).exit_code == 1);   // none exists
    CHECK(run({"oracle", pm.path, "--target", "ham"}).exit_code == 2);  // wrong graph count
    CHECK(run({"oracle", pm.path, "--target", "cycle:3"}).exit_code == 2);
}

TEST_CASE("solve emits a verified witness report") {
    TempFile file("solveme.rbf");
    REQUIRE(run({"gen", "--n", "5", "--graphs", "10", "--seed", "2", "--out", file.path})
                .exit_code == 0);
    TempFile report("solve-report.txt");
    auto res = run({"solve", file.path, "--target", "cycle:6", "--seed", "2", "--report",
                    report.path});
    CHECK(res.exit_code == 0);
    std::string doc = slurp(report.path);
    CHECK(doc.find("outcome found") != std::string::npos);
    CHECK(doc.find("witness-length 6") != std::string::npos);
}

TEST_CASE("solve reports no_move with exit 3 when fallback is disabled and moves stall") {
    TempFile hex("hex2.rbf");
    REQUIRE(run({"gen", "--construction", "hexagon", "--out", hex.path}).exit_code == 0);
    // no rainbow 4-cycle exists; without fallback the pipeline must stall
    auto res = run({"solve", hex.path, "--target", "cycle:4", "--no-fallback"});
    CHECK(res.exit_code == 3);
    CHECK(res.out.find("outcome no_move") != std::string::npos);
    // with fallback the oracle settles it as none
    CHECK(run({"solve", hex.path, "--target", "cycle:4"}).exit_code == 1);
}

TEST_CASE("budget exhaustion maps to exit 3") {
    TempFile file("budget.rbf");
    REQUIRE(run({"gen", "--n", "5", "--graphs", "10", "--seed", "3", "--out", file.path})
                .exit_code == 0);
    auto res = run({"oracle", file.path, "--target", "ham", "--budget-nodes", "2"});
    CHECK(res.exit_code == 3);
    CHECK(res.out.find("outcome budget_exhausted") != std::string::npos);
}

TEST_CASE("verify-theorem smoke runs") {
    auto res3 = run({"verify-theorem", "--theorem", "3", "--n-min", "2", "--n-max", "3",
                     "--trials", "3", "--seed", "11"});
    CHECK(res3.exit_code == 0);
    CHECK(res3.out.find("result pass") != std::string::npos);
    auto res4 = run({"verify-theorem", "--theorem", "4", "--n-min", "3", "--n-max", "4",
                     "--trials", "2", "--seed", "11"});
    CHECK(res4.exit_code == 0);
    auto res5 = run({"verify-theorem", "--theorem", "5", "--n-min", "2", "--n-max", "4",
                     "--trials", "3", "--seed", "11"});
    CHECK(res5.exit_code == 0);
    // theorem 4 at n = 3 must skip length 4
    CHECK(res4.out.find("n=3 target=cycle:4") == std::string::npos);
    CHECK(res4.out.find("n=3 target=cycle:6") != std::string::npos);
}

TEST_CASE("verify-theorem enforces the desk-scale cap") {
    auto res = run({"verify-theorem", "--theorem", "3", "--n-min", "2", "--n-max", "9",
                    "--trials", "1"});
    CHECK(res.exit_code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"frobnicate"}).exit_code == 2);
    CHECK(run({"solve", "missing-file.rbf"}).exit_code == 2);           // missing --target
    CHECK(run({"solve", "missing-file.rbf", "--target", "ham"}).exit_code == 2);  // no file
}
