#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun run_cli(const std::string& args) {
    static int counter = 0;
    const std::string tag = std::to_string(counter++);
    const std::string outfile = "cli_stdout_" + tag + ".txt";
    const std::string errfile = "cli_stderr_" + tag + ".txt";
    const std::string cmd = std::string(CLI_BIN) + " " + args + " > " + outfile + " 2> " + errfile;
    const int st = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.out = slurp(outfile);
    r.err = slurp(errfile);
    std::remove(outfile.c_str());
    std::remove(errfile.c_str());
    return r;
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

bool has(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli invariants of clusters and graphs") {
    CliRun m = run_cli("invariants " + data("m.cluster"));
    CHECK(m.code == 0);
    CHECK(has(m.out, "mu      = 0"));
    CHECK(has(m.out, "e       = 1"));
    CHECK(has(m.out, "e_delta = 0"));
    CHECK(has(m.out, "unloaded = no"));

    CliRun a3 = run_cli("invariants " + data("a3.graph"));
    CHECK(a3.code == 0);
    CHECK(has(a3.out, "mu      = 1"));
    CHECK(has(a3.out, "e       = 2"));
    CHECK(has(a3.out, "e_delta = 2"));

    CliRun cusp = run_cli("--format json invariants " + data("cusp.cluster"));
    REQUIRE(cusp.code == 0);
    auto j = nlohmann::json::parse(cusp.out);
    CHECK(j["mu"] == 2);
    CHECK(j["e"] == 6);
    CHECK(j["e_delta"] == 7);
    CHECK(j["unloaded"] == false);
    CHECK(j["Z"]["O2"] == "6");
    CHECK(j["K"]["O2"] == "4");
}

TEST_CASE("cli unload") {
    CliRun r = run_cli("--format json unload " + data("overload-chain.cluster"));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["steps"] == 1);
    CHECK(j["consistent_input"] == false);
    CHECK(j["points"][0]["mult"] == 1);
    CHECK(j["points"][1]["mult"] == 0);
    CHECK(j["points"][1]["coord"] == "inf");

    CliRun text = run_cli("unload " + data("overload-chain.cluster"));
    CHECK(has(text.out, "# unloading steps: 1"));
    CHECK(has(text.out, "point O root mult=1"));

    CliRun ok = run_cli("--format json unload " + data("m.cluster"));
    auto jk = nlohmann::json::parse(ok.out);
    CHECK(jk["steps"] == 0);
    CHECK(jk["consistent_input"] == true);
}

TEST_CASE("cli membership") {
    CliRun no = run_cli("member " + data("ypoly.poly") + " " + data("chain-xy2.cluster"));
    CHECK(no.code == 0);
    CHECK(has(no.out, "member = false"));
    CHECK(has(no.out, "MISSED"));

    CliRun yes = run_cli("--format json member " + data("tangent.poly") + " " + data("chain-xy2.cluster"));
    REQUIRE(yes.code == 0);
    auto j = nlohmann::json::parse(yes.out);
    CHECK(j["member"] == true);
    CHECK(j["certified_precision"].is_null());

    CliRun cusp = run_cli("member " + data("cusp.poly") + " " + data("cusp.cluster"));
    CHECK(cusp.code == 0);
    CHECK(has(cusp.out, "member = true"));
}

TEST_CASE("cli generality") {
    CliRun special = run_cli("--format json general " + data("cusp.poly") + " " + data("m2.cluster"));
    REQUIRE(special.code == 0);
    auto j = nlohmann::json::parse(special.out);
    CHECK(j["member"] == true);
    CHECK(j["mu"] == 2);
    CHECK(j["mu_generic"] == 1);
    CHECK(j["sharp"] == false);
    CHECK(j["general"] == false);
    CHECK(j["biconditional_ok"] == true);

    CliRun gen = run_cli("general " + data("cusp.poly") + " " + data("cusp.cluster"));
    CHECK(gen.code == 0);
    CHECK(has(gen.out, "general = true"));
    CHECK(has(gen.out, "mu      = 2"));

    // "-" draws a seeded member of the ideal; the biconditional must hold
    CliRun drawn = run_cli("--seed 9 general - " + data("cusp.cluster"));
    CHECK(drawn.code == 0);
    CHECK(has(drawn.out, "poly    = "));
    CHECK(has(drawn.out, "biconditional_ok = true"));
}

TEST_CASE("cli reduction") {
    CliRun good = run_cli("--format json reduction " + data("cusp.poly") + " " + data("cusp2.poly") +
                          " " + data("cusp.cluster"));
    REQUIRE(good.code == 0);
    auto j = nlohmann::json::parse(good.out);
    CHECK(j["e_I"] == 6);
    CHECK(j["e_J"] == 6);
    CHECK(j["reduction"] == true);
    CHECK(j["v_superficial_f"] == true);
    CHECK(j["v_superficial_g"] == true);
    CHECK(j["separated"] == true);

    // a pair with a common branch has no finite intersection multiplicity
    CliRun shared = run_cli("reduction " + data("smooth.poly") + " " + data("smooth.poly") + " " +
                            data("m.cluster"));
    CHECK(shared.code == 3);
    CHECK(has(shared.err, "refused"));
}

TEST_CASE("cli pencil") {
    CliRun r = run_cli("pencil " + data("smooth.poly") + " " + data("ypoly.poly"));
    CHECK(r.code == 0);
    CHECK(has(r.out, "degree = 1"));
    CHECK(has(r.out, "min_mu = 0"));

    CliRun c = run_cli("--format json --samples 3 pencil " + data("cusp.poly") + " " + data("cusp2.poly"));
    REQUIRE(c.code == 0);
    auto j = nlohmann::json::parse(c.out);
    CHECK(j["degree"] == 6);
    CHECK(j["min_mu"] == 2);
    CHECK(j["samples"].size() == 3);
    CHECK(j["samples"][2]["rhs"] == 7);

    CliRun bad = run_cli("pencil " + data("smooth.poly") + " " + data("smooth.poly"));
    CHECK(bad.code == 3);
}

TEST_CASE("cli graph export") {
    CliRun r = run_cli("graph " + data("cusp.cluster"));
    CHECK(r.code == 0);
    CHECK(has(r.out, "vertex O self=-3 genus=0"));
    CHECK(has(r.out, "vertex O2 self=-1 genus=0"));
    CHECK(has(r.out, "cycle Z O=2 O1=3 O2=6"));
    CHECK(has(r.out, "cycle K O=1 O1=2 O2=4"));
}

TEST_CASE("cli verify") {
    CliRun ok = run_cli("verify le-greuel");
    CHECK(ok.code == 0);
    CHECK(has(ok.out, "[PASS]"));
    CHECK(has(ok.out, "suite le-greuel: 20/20 passed"));

    CliRun unknown = run_cli("verify everything");
    CHECK(unknown.code == 2);

    CliRun small = run_cli("--seed 3 --samples 4 verify unloading");
    CHECK(small.code == 0);
    CHECK(has(small.out, "chain-0-1"));
}

TEST_CASE("cli usage errors") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("invariants").code == 2);
    CHECK(run_cli("--format yaml invariants " + data("m.cluster")).code == 2);
    CHECK(run_cli("--samples 0 verify unloading").code == 2);
    CHECK(run_cli("invariants " + data("nonexistent.cluster")).code == 2);
}

TEST_CASE("cli json output is byte-stable") {
    const std::string cmd = "--format json --seed 7 general - " + data("cusp.cluster");
    CliRun a = run_cli(cmd);
    CliRun b = run_cli(cmd);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());

    CliRun c = run_cli("--format json invariants " + data("a1.graph"));
    CliRun d = run_cli("--format json invariants " + data("a1.graph"));
    CHECK(c.out == d.out);
}
