#include "subfde/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace subfde;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string config(const char* name) { return std::string(SUBFDE_SOURCE_DIR) + "/configs/" + name + ".cfg"; }

std::string temp_file(const char* name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("number format") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0 / 3) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("stencil tables") {
    auto r = cli({"stencil", "--n", "4", "--kind", "central"});
    CHECK(r.status == 0);
    CHECK(r.out == "1,-4,6,-4,1\n");
    r = cli({"stencil", "--n", "5", "--kind", "central"});
    CHECK(r.out == "-1,4,-5,0,5,-4,1\n");
    r = cli({"stencil", "--n", "1", "--kind", "backward", "--format", "csv"});
    CHECK(r.out == "kind,n,offset,weight,norm\nbackward,1,-2,1,2\nbackward,1,-1,-4,2\nbackward,1,0,3,2\n");
    r = cli({"stencil"});
    CHECK(r.status == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 24);
    CHECK(cli({"stencil", "--kind", "sideways"}).status == 1);
}

TEST_CASE("solve writes a CSV of t and y") {
    const auto r = cli({"solve", "--config", config("example1"), "--h", "2^-4"});
    REQUIRE(r.status == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,y");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 17);
    CHECK(r.out.find("\n1,") != std::string::npos);
    CHECK(r.err.find("conditioning") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs and to --out") {
    const auto a = cli({"solve", "--config", config("fig2"), "--t-end", "1"});
    const auto b = cli({"solve", "--config", config("fig2"), "--t-end", "1"});
    CHECK(a.out == b.out);
    const auto path = (std::filesystem::temp_directory_path() / "subfde_fig2.csv").string();
    REQUIRE(cli({"solve", "--config", config("fig2"), "--t-end", "1", "--out", path}).status == 0);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == a.out);
    CHECK(a.out.find('\r') == std::string::npos);
}

TEST_CASE("condition report and exit status") {
    auto r = cli({"condition", "--config", config("example1")});
    CHECK(r.status == 0);
    CHECK(r.out.find("satisfied: no") != std::string::npos);
    CHECK(r.out.find("m,diag,offdiag,margin") != std::string::npos);
    r = cli({"condition", "--config", config("example1"), "--fail-on-unconditioned"});
    CHECK(r.status == 2);
    const auto good = temp_file("subfde_good.cfg", "term = 0.5, \"1\"\np = \"5\"\nf = \"1\"\nics = 0\nh = 0.1\nt_end = 4\n");
    r = cli({"condition", "--config", good, "--fail-on-unconditioned"});
    CHECK(r.status == 0);
    CHECK(r.out.find("satisfied: yes") != std::string::npos);
}

TEST_CASE("assemble dump") {
    const auto r = cli({"assemble", "--config", config("example1"), "--h", "0.25", "--dump"});
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("m,k,d\n", 0) == 0);
    // rows 2..4 have 3 + 4 + 5 coefficients
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 13);
    const auto s = cli({"assemble", "--config", config("example1"), "--h", "0.25"});
    CHECK(s.out.rfind("m,pivot,p,rhs,degraded\n", 0) == 0);
}

TEST_CASE("convergence table") {
    const auto r = cli({"converge", "--config", config("manufactured"), "--levels", "3"});
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("h,max_error,observed_order\n0.015625,", 0) == 0);
    CHECK(r.out.find(",nan\n") != std::string::npos);
    const auto nofit = temp_file("subfde_nofit.cfg", "term = 0.5, \"2\"\np = \"1\"\nf = \"1\"\nics = 0\nh = 0.1\nt_end = 1\n");
    CHECK(cli({"converge", "--config", nofit}).status == 1);
}

TEST_CASE("derivative evaluation") {
    auto r = cli({"deriv", "--alpha", "0.5", "--dnf", "1", "--h", "0.5"});
    REQUIRE(r.status == 0);
    CHECK(r.out == "t,caputo\n0.5,0.797884560803\n1,1.1283791671\n");
    r = cli({"deriv", "--alpha", "0.5", "--f", "x", "--h", "0.5"});
    CHECK(r.out == "t,caputo\n0.5,0.797884560803\n1,1.1283791671\n");
    CHECK(cli({"deriv", "--alpha", "0.5"}).status == 1);
    CHECK(cli({"deriv", "--alpha", "1", "--dnf", "1"}).status == 1);
    CHECK(cli({"deriv", "--alpha", "0.5", "--dnf", "ln(x-2)"}).status == 2);
}

TEST_CASE("oracles") {
    auto r = cli({"oracle", "--kind", "mittag-leffler", "--alpha", "2", "--at", "-1"});
    CHECK(r.out == "z,value\n-1,0.540302305868\n");
    r = cli({"oracle", "--kind", "caputo-power", "--alpha", "0.5", "--beta", "1", "--h", "0.5"});
    CHECK(r.out == "t,value\n0.5,0.797884560803\n1,1.1283791671\n");
    r = cli({"oracle", "--kind", "relaxation", "--alpha", "1.5", "--at", "0"});
    CHECK(r.out == "t,value\n0,0\n");
    r = cli({"oracle", "--kind", "bessel", "--at", "1"});
    CHECK(r.out == "t,value\n1,0.126768644373\n");
    CHECK(cli({"oracle", "--kind", "mittag-leffler", "--alpha", "0.1", "--at", "20"}).status == 2);
    CHECK(cli({"oracle", "--kind", "caputo-power"}).status == 1);
    CHECK(cli({"oracle", "--kind", "nope"}).status == 1);
}

TEST_CASE("usage and numerical failures") {
    CHECK(cli({}).status == 1);
    CHECK(cli({"frobnicate"}).status == 1);
    CHECK(cli({"solve"}).status == 1);
    auto r = cli({"solve", "--config", "/nonexistent.cfg"});
    CHECK(r.status == 1);
    const auto bad = temp_file("subfde_bad.cfg", "term = 1.5, \"1\"\np = \"1+\"\n");
    r = cli({"solve", "--config", bad});
    CHECK(r.status == 1);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(r.err.find("offset 2") != std::string::npos);
    CHECK(cli({"solve", "--config", config("example1"), "--h", "0.3"}).status == 1);
    const auto sing = temp_file("subfde_sing.cfg", "term = 0.5, \"1\"\nf = \"1/(x-0.5)\"\nics = 0\nh = 0.25\nt_end = 1\n");
    r = cli({"solve", "--config", sing});
    CHECK(r.status == 2);
    CHECK(cli({"--help"}).status == 0);
}

TEST_CASE("figure configs run end to end") {
    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5"}) {
        CAPTURE(name);
        const auto r = cli({"solve", "--config", config(name)});
        CHECK(r.status == 0);
        CHECK(r.out.find("nan") == std::string::npos);
    }
}

}
