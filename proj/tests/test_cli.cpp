#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(PE_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("evaluate succeeds and reports the cost") {
    RunResult r = run("evaluate search2 --alpha 0.6361 --rho 0.7944");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("3.8327") != std::string::npos);
}

TEST_CASE("evaluate --json is byte-identical across runs") {
    const char* args = "--json evaluate search1 --alpha 1.1419 --beta 0.9258";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"cost\"") != std::string::npos);
    CHECK(a.out.find("\"version\"") != std::string::npos);
}

TEST_CASE("infeasible parameters exit 2 and name the condition") {
    RunResult r = run("evaluate search2 --alpha 3.0 --rho 0.1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("queen_arrives_before_search_ends") != std::string::npos);
}

TEST_CASE("wrong arity exits 64") {
    CHECK(run("evaluate search2 --alpha 0.6").exit_code == 64);
    CHECK(run("evaluate search2 --alpha 0.6 --beta 0.5 --rho 0.8").exit_code == 64);
    CHECK(run("evaluate").exit_code == 64);
    CHECK(run("nonsense").exit_code == 64);
}

TEST_CASE("bounds table lists both directions") {
    RunResult r = run("bounds");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("upper") != std::string::npos);
    CHECK(r.out.find("lower") != std::string::npos);
    CHECK(r.out.find("4.8185") != std::string::npos);
    CHECK(r.out.find("4.3896") != std::string::npos);
    CHECK(r.out.find("3.6307") != std::string::npos);
    CHECK(r.out.find("3.2017") != std::string::npos);
}

TEST_CASE("export writes csv and svg deterministically") {
    std::string prefix = "/tmp/pe_cli_test_export";
    RunResult r = run("--out " + prefix +
                      " export search2 --alpha 0.6361 --rho 0.7944 --step 0.01");
    CHECK(r.exit_code == 0);
    std::ifstream csv(prefix + ".csv");
    REQUIRE(csv.good());
    std::stringstream cs;
    cs << csv.rdbuf();
    std::string header = cs.str().substr(0, cs.str().find('\n'));
    CHECK(header == "robot,t,x,y");
    // 3 robots, rows 0..ceil(t_end/step)
    CHECK(count_lines(cs.str()) >= 3 * 100);
    std::ifstream svg1(prefix + ".svg");
    REQUIRE(svg1.good());
    std::stringstream s1;
    s1 << svg1.rdbuf();
    CHECK(s1.str().find("<svg") != std::string::npos);
    RunResult r2 = run("--out " + prefix +
                       " export search2 --alpha 0.6361 --rho 0.7944 --step 0.01");
    CHECK(r2.exit_code == 0);
    std::ifstream svg2(prefix + ".svg");
    std::stringstream s2;
    s2 << svg2.rdbuf();
    CHECK(s1.str() == s2.str());
}

TEST_CASE("export to an unwritable location exits 74") {
    RunResult r = run(
        "--out /nonexistent/dir/x export search2 --alpha 0.6361 --rho 0.7944");
    CHECK(r.exit_code == 74);
}

TEST_CASE("verify passes by default and lists its checks") {
    RunResult list = run("verify --list");
    CHECK(list.exit_code == 0);
    CHECK(count_lines(list.out) >= 15);
    RunResult r = run("verify");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify with a coarse integrator step reports a failure") {
    RunResult r = run("verify --ode-step 1e-1");
    CHECK(r.exit_code != 0);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("optimize from the published seed stays at the optimum") {
    RunResult r = run(
        "optimize search2 --alpha 0.6361 --rho 0.7944 --radius 0.02 --opt-tol 1e-4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("3.832") != std::string::npos);
}
