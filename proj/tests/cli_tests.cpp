// Drives the installed CLI binary end to end: output shapes, exit codes,
// format flags, budgets.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string capture = "/tmp/coxmatch_cli_capture.txt";
    const std::string cmd =
        std::string(COXMATCH_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(capture);
    std::stringstream ss;
    ss << in.rdbuf();
    return {code, ss.str()};
}

std::string data(const std::string& name) {
    return std::string(COXMATCH_TEST_DATA) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("interval") {
    auto r = run("interval --matrix " + data("a2.json") + " --word \"0 1 0\"");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "6 elements"));
    CHECK(contains(r.out, "1 2 2 1"));

    auto empty = run("interval --matrix " + data("a2.json") + " --word \"\"");
    CHECK(empty.code == 0);
    CHECK(contains(empty.out, "1 elements"));

    auto bad = run("interval --matrix " + data("a2.json") + " --word \"0 7\"");
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "out of range"));

    auto json = run("interval --matrix " + data("a2.json") + " --word \"0 1 0\" --format json");
    CHECK(json.code == 0);
    CHECK(contains(json.out, "\"covers\""));

    auto dot = run("interval --matrix " + data("a2.json") + " --word \"0 1 0\" --format dot");
    CHECK(dot.code == 0);
    CHECK(contains(dot.out, "digraph"));
}

TEST_CASE("budgets map to exit code 2") {
    auto r = run("interval --matrix " + data("a2.json") +
                 " --word \"0 1 0\" --budget-interval 3");
    CHECK(r.code == 2);
    auto c = run("interval --matrix " + data("a3.json") +
                 " --word \"0 1 2 0 1 0\" --budget-closure 4");
    CHECK(c.code == 2);
}

TEST_CASE("usage errors map to exit code 1") {
    CHECK(run("interval --word \"0\"").code == 1);
    CHECK(run("nonsense").code == 1);
    CHECK(run("interval --matrix /nonexistent.json --word \"0\"").code == 1);
    CHECK(run("matchings --matrix " + data("a2.json") + " --word \"0\" --format dot").code == 1);
    CHECK(run("klpoly --matrix " + data("a2.json") + " --word \"0\" --u \"1\"").code == 1);
}

TEST_CASE("matchings") {
    auto r = run("matchings --matrix " + data("a2.json") + " --word \"0 1 0\"");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "brute force: 4"));
    CHECK(contains(r.out, "systems: 4"));
    CHECK(contains(r.out, "consistency: OK"));

    auto single = run("matchings --matrix " + data("a2.json") + " --word \"0\"");
    CHECK(single.code == 0);
    CHECK(contains(single.out, "brute force: 1"));

    auto crown = run("matchings --matrix " + data("i2_5.json") + " --word \"1 0 1 0\"");
    CHECK(crown.code == 0);
    CHECK(contains(crown.out, "consistency: OK"));
    CHECK(contains(crown.out, "kind=second"));
}

TEST_CASE("systems") {
    auto r = run("systems --matrix " + data("rst_2_3_5.json") +
                 " --word \"0 2 1 2 1\" --format json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"J\""));
    CHECK(contains(r.out, "\"M\""));
}

TEST_CASE("rpoly") {
    auto r = run("rpoly --matrix " + data("a2.json") + " --word \"0 1 0\"");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "q^3 - 2q^2 + 2q - 1"));

    auto same = run("rpoly --matrix " + data("a2.json") + " --word \"0 1 0\" --u \"0 1 0\"");
    CHECK(same.code == 0);
    CHECK(same.out == "1\n");

    auto viaM = run("rpoly --matrix " + data("i2_5.json") +
                    " --word \"1 0 1 0\" --mode matching:2");
    CHECK(viaM.code == 0);

    auto abs = run("rpoly --matrix " + data("a2.json") +
                   " --word \"0 1 0\" --mode abstract --format json");
    CHECK(abs.code == 0);
    CHECK(contains(abs.out, "[-1,2,-2,1]"));

    auto badmode = run("rpoly --matrix " + data("a2.json") + " --word \"0\" --mode sideways");
    CHECK(badmode.code == 1);
}

TEST_CASE("klpoly") {
    auto r = run("klpoly --matrix " + data("i2_5.json") + " --word \"0 1 0 1 0\"");
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    auto nontrivial = run("klpoly --matrix " + data("a3.json") +
                          " --word \"1 0 2 1\" --u \"1\"");
    CHECK(nontrivial.code == 0);
    CHECK(contains(nontrivial.out, "q + 1"));
}

TEST_CASE("invariance") {
    auto same = run("invariance --matrix " + data("a2.json") + " --word \"0 1 0\" --matrix2 " +
                    data("a2.json") + " --word2 \"0 1 0\"");
    CHECK(same.code == 0);
    CHECK(contains(same.out, "PASS"));

    auto dihedral = run("invariance --matrix " + data("a2.json") + " --word \"0 1 0\" --matrix2 " +
                        data("b2.json") + " --word2 \"0 1 0\"");
    CHECK(dihedral.code == 0);
    CHECK(contains(dihedral.out, "PASS"));

    auto different = run("invariance --matrix " + data("a1x2.json") +
                         " --word \"0 1\" --matrix2 " + data("a1x2.json") + " --word2 \"0\"");
    CHECK(different.code == 0);
    CHECK(contains(different.out, "NOT ISOMORPHIC"));
}

TEST_CASE("export-dot writes to a file") {
    const std::string path = "/tmp/coxmatch_cli_dot.dot";
    auto r = run("export-dot --matrix " + data("a2.json") + " --word \"0 1\" --out " + path);
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(contains(ss.str(), "digraph"));
    CHECK(contains(ss.str(), "rank=same"));
}
