#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "pre/equiv.hpp"
#include "pre/gpts_io.hpp"
#include "pre/parse.hpp"
#include "pre/solver.hpp"

using namespace pre;

namespace {

const std::string kBin = PRE_CLI_BIN;
const std::string kFixtures = PRE_FIXTURES_DIR;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = kBin + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("cli eval") {
    CHECK(run("eval \"a;a^[1/4]\" aaa").out == "3/64\n");
    CHECK(run("eval \"a;a^[1/4]\" aaa").exit_code == 0);
    CHECK(run("eval 1 \"\"").out == "1\n");
    CHECK(run("eval \"a^[1/2];(b+[1/2]1)\" \"\"").out == "1/4\n");
    CHECK(run("eval \"a;a^[1/4]\" aaa --approx 6").out == "3/64 ~ 0.046875\n");
    CHECK(run("eval \"a;;\" a").exit_code == 2);
    CHECK(run("eval a b --alphabet a").exit_code == 3);
    CHECK(run("eval \"a;b\" b --alphabet b").exit_code == 3);
}

TEST_CASE("cli equiv") {
    RunResult equal = run("equiv \"a;a^[1/4]\" \"a+[3/4](a;a^[1/4];a)\"");
    CHECK(equal.out == "EQUAL\n");
    CHECK(equal.exit_code == 0);
    CHECK(run("equiv \"1^[1]\" 0").out == "EQUAL\n");
    RunResult differ = run("equiv a \"a+[1/2]b\"");
    CHECK(differ.out == "DIFFER at \"a\": 1 vs 1/2\n");
    CHECK(differ.exit_code == 1);
    CHECK(run("equiv \"a+\" 0").exit_code == 2);
}

TEST_CASE("cli derive round trips") {
    std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/pre_cli_derive.json";
    RunResult r = run("derive \"a;a^[1/4]\" -o " + tmp);
    CHECK(r.exit_code == 0);
    Gpts g = load_gpts(tmp);
    CHECK(validate(g).empty());
    CHECK(g.states.size() <= 5);
    // Byte-identical to the library rendering.
    std::ifstream in(tmp);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == gpts_to_json(reachable(parse("a;a^[1/4]"))).dump(2) + "\n");
    std::remove(tmp.c_str());

    RunResult dot = run("derive 1 --format dot");
    CHECK(dot.exit_code == 0);
    CHECK(dot.out == gpts_to_dot(reachable(Expr::one())));
    CHECK(run("derive \"(\"").exit_code == 2);
}

TEST_CASE("cli solve") {
    RunResult r = run("solve " + kFixtures + "/ex2-left.json q0");
    Gpts g = load_gpts(kFixtures + "/ex2-left.json");
    CHECK(r.out == render(solve(system_of(g))[0]) + "\n");
    CHECK(r.exit_code == 0);

    RunResult chk = run("solve " + kFixtures + "/ex2-left.json q0 --self-check");
    CHECK(chk.out.find("ROUNDTRIP OK\n") != std::string::npos);

    // The solved expression denotes the same language as the two-state
    // original; check through the equiv command.
    std::string solved = r.out.substr(0, r.out.size() - 1);
    CHECK(run("equiv \"" + solved + "\" \"a;a^[1/4]\"").out == "EQUAL\n");

    CHECK(run("solve " + kFixtures + "/ex2-left.json nosuch").exit_code == 3);
    CHECK(run("solve " + kFixtures + "/nonexistent.json q0").exit_code == 2);

    RunResult accept = run("solve " + kFixtures + "/accept.json s");
    Gpts ga = load_gpts(kFixtures + "/accept.json");
    CHECK(accept.out == render(solve(system_of(ga))[0]) + "\n");

    // Mass above one fails the system invariants.
    std::string bad = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/pre_cli_bad.json";
    std::ofstream(bad) << R"({"alphabet":["a"],"states":["q"],"transitions":[
        {"from":"q","label":null,"prob":"3/4","to":null},
        {"from":"q","label":"a","prob":"1/2","to":"q"}]})";
    CHECK(run("solve " + bad + " q").exit_code == 4);
    std::remove(bad.c_str());
}

TEST_CASE("cli bisim") {
    RunResult r = run("bisim " + kFixtures + "/ex3.json");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "q0\nq1\nq2 q5\nq3\nq4\n");
    RunResult crossed = run("bisim " + kFixtures + "/ex3.json --cross-check");
    CHECK(crossed.out.find("LANG-EQUAL BUT NOT BISIMILAR: (q0,q3)\n") != std::string::npos);
    CHECK(run("bisim " + kFixtures + "/nonexistent.json").exit_code == 2);
}

TEST_CASE("cli axioms-check") {
    RunResult r = run("axioms-check --seed 1 --trials 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("C1: 5/5\n") != std::string::npos);
    CHECK(r.out.find("Tight: 5/5\n") != std::string::npos);
    CHECK(r.out.find("all schemas passed\n") != std::string::npos);
}
