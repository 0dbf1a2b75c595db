#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wk/cli.hpp"

using namespace wk;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/wk_test_" + name) {}
    ~TempFile() {
        std::remove(path.c_str());
        std::remove((path + ".txt").c_str());
    }
};

}  // namespace

TEST_CASE("tau subcommand prints the normalized image") {
    CliRun r = run_cli({"tau", "--n", "3", "--i", "2", "--poly", "x0"});
    CHECK(r.code == 0);
    CHECK(r.out == "2*x0*x2 - x1^2\n");

    CliRun zero = run_cli({"tau", "--n", "3", "--i", "1", "--poly", "x0"});
    CHECK(zero.code == 0);
    CHECK(zero.out == "0\n");

    CliRun bad = run_cli({"tau", "--n", "2", "--i", "1", "--poly", "x1"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("delta subcommand") {
    CliRun r = run_cli({"delta", "--n", "4", "--m", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "2*x0*x4 - 2*x1*x3 + x2^2\n");
    CHECK(run_cli({"delta", "--n", "4", "--m", "3"}).out == "0\n");
    CHECK(run_cli({"delta", "--n", "4", "--m", "5"}).code == 1);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"kernel", "--n", "3"}).code == 2);           // missing --out
    CHECK(run_cli({"tau", "--n", "3"}).code == 2);              // missing flags
    CHECK(run_cli({"unknown"}).code == 2);
}

TEST_CASE("kernel writes generator files and verify/oracle accept them") {
    TempFile file("g3.json");
    CliRun r = run_cli({"kernel", "--n", "3", "--out", file.path});
    CHECK(r.code == 0);
    CHECK(r.out.find("4 generators") != std::string::npos);

    std::ifstream json_in(file.path);
    REQUIRE(json_in.good());
    std::ifstream table_in(file.path + ".txt");
    REQUIRE(table_in.good());

    CliRun verify = run_cli({"verify", "--gens", file.path});
    CHECK(verify.code == 0);
    CHECK(verify.out.find("PASS") != std::string::npos);

    CliRun oracle = run_cli({"oracle", "--n", "3", "--deg-max", "4", "--gens", file.path});
    CHECK(oracle.code == 0);
    CHECK(oracle.out.find("all slices match") != std::string::npos);
}

TEST_CASE("kernel then verify then oracle passes at n=4") {
    TempFile file("g4chain.json");
    REQUIRE(run_cli({"kernel", "--n", "4", "--out", file.path}).code == 0);
    CHECK(run_cli({"verify", "--gens", file.path}).code == 0);
    CHECK(run_cli({"oracle", "--n", "4", "--deg-max", "6", "--gens", file.path}).code == 0);
}

TEST_CASE("WK_THREADS is honored as a fallback") {
    setenv("WK_THREADS", "3", 1);
    set_thread_count(0);
    CHECK(thread_count() == 3);
    set_thread_count(2);
    CHECK(thread_count() == 2);
    unsetenv("WK_THREADS");
    set_thread_count(0);
}

TEST_CASE("member subcommand reports a representation") {
    TempFile file("g4.json");
    REQUIRE(run_cli({"kernel", "--n", "4", "--out", file.path}).code == 0);

    // tau_1(tr_1) where tr_1 = tau_1(tau_2(t)).
    Poly d1 = normalize_primitive(tau(2, Poly::variable(4, 0), 4));
    Poly tr1 = normalize_primitive(tau(1, d1, 4));
    Poly z = normalize_primitive(tau(1, tr1, 4));
    CliRun member = run_cli({"member", "--n", "4", "--poly", format_poly(z), "--gens", file.path});
    CHECK(member.code == 0);
    CHECK(member.out.substr(0, 7) == "member\n");

    // Against the degree-2 subset {t, d_1, d_2} alone, tr_1 is not a member.
    TempFile reduced("g4_reduced.json");
    {
        KernelResult full = load_generator_file(file.path);
        KernelResult subset = full;
        subset.generators.clear();
        for (const GeneratorInfo& g : full.generators)
            if (g.sig.deg <= 2) subset.generators.push_back(g);
        REQUIRE(subset.generators.size() == 3);
        write_generator_file(subset, reduced.path);
    }
    CliRun non =
        run_cli({"member", "--n", "4", "--poly", format_poly(tr1), "--gens", reduced.path});
    CHECK(non.code == 1);
    CHECK(non.out == "not member\n");
}

TEST_CASE("decompose subcommand prints the coefficients") {
    CliRun r = run_cli({"decompose", "--n", "3", "--poly", "-2*x0*x2 + x1^2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("c(1) = -2*x0") != std::string::npos);
    CHECK(r.out.find("reconstruction verified") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical output") {
    TempFile a("det_a.json"), b("det_b.json");
    CliRun ra = run_cli({"kernel", "--n", "3", "--out", a.path});
    CliRun rb = run_cli({"kernel", "--n", "3", "--out", b.path});
    CHECK(ra.out == rb.out);
    std::ifstream fa(a.path), fb(b.path);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().find("\"closed\": true") != std::string::npos);
}

TEST_CASE("thread flag does not change results") {
    TempFile a("thr_a.json"), b("thr_b.json");
    run_cli({"--threads", "1", "kernel", "--n", "2", "--out", a.path});
    run_cli({"--threads", "2", "kernel", "--n", "2", "--out", b.path});
    set_thread_count(0);
    std::ifstream fa(a.path), fb(b.path);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
}
