#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "horncrit/cli.hpp"
#include "horncrit/config.hpp"

using namespace horncrit;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
};

CliResult run(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("horncrit");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    CliResult res;
    res.code = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    res.out = captured.str();
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/horncrit_test_") + name;
}

}  // namespace

TEST_CASE("classify prints a one-line verdict") {
    const CliResult r = run({"classify", "--l", "1", "--m", "2", "--profile", "power",
                             "--gamma", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, r.out.find('\n')) == "recurrent");

    const CliResult t = run({"classify", "--l", "1", "--m", "2", "--profile", "power",
                             "--gamma", "0.75"});
    CHECK(t.code == 0);
    CHECK(t.out.substr(0, t.out.find('\n')) == "transient");
}

TEST_CASE("parse failures exit with code 3") {
    CHECK(run({"classify", "--l", "1", "--m", "2", "--profile", "power", "--gamma", "abc"})
              .code == 3);
    CHECK(run({"classify", "--no-such-flag"}).code == 3);
    // --sign belongs to lyapunov, not classify
    CHECK(run({"classify", "--volume", "--sign", "plus"}).code == 3);
    CHECK(run({"classify", "--l", "1", "--m", "1", "--profile", "constant", "--a", "1"}).code ==
          3);
}

TEST_CASE("volume flag switches to the positive-recurrence test") {
    const CliResult r = run({"classify", "--volume", "--l", "1", "--m", "2", "--profile",
                             "power", "--gamma", "-0.6"});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, r.out.find('\n')) == "positive-recurrent");
}

TEST_CASE("evidence CSV carries the dyadic block trace") {
    const std::string path = temp_path("evidence.csv");
    const CliResult r = run({"classify", "--l", "1", "--m", "2", "--profile", "power",
                             "--gamma", "0.5", "--evidence", path});
    CHECK(r.code == 0);
    const std::string csv = slurp(path);
    CHECK(csv.find("k,I_k,ratio") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') > 10);
    std::remove(path.c_str());
}

TEST_CASE("check-assumptions reports per-condition verdicts and exit codes") {
    const CliResult pass = run({"check-assumptions", "--profile", "power", "--gamma", "0.5"});
    CHECK(pass.code == 0);
    CHECK(pass.out.find("overall: pass") != std::string::npos);
    // too-short horizon cannot certify the limits: inconclusive, exit 2
    const CliResult inc = run({"check-assumptions", "--profile", "power", "--gamma", "0.5",
                               "--smax", "1e4"});
    CHECK(inc.code == 2);
}

TEST_CASE("experiment cycle emits the 3/8 oracle row") {
    const std::string path = temp_path("cycle.csv");
    const CliResult r = run({"experiment", "cycle", "--m", "2", "--a", "1", "--paths", "200",
                             "--h", "0.001", "--seed", "7", "--out", path});
    CHECK(r.code == 0);
    const std::string csv = slurp(path);
    CHECK(csv.find("E_sigma_a") != std::string::npos);
    CHECK(csv.find("0.375") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("identical argv and seed give byte-identical CSV output") {
    const std::string p1 = temp_path("det1.csv"), p2 = temp_path("det2.csv");
    const std::vector<std::string> base = {"simulate", "--l",     "1",    "--m",    "2",
                                           "--profile", "constant", "--a",  "1",      "--start-rho",
                                           "2",         "--inner",  "1",    "--outer", "5",
                                           "--h",       "0.002",    "--paths", "200",  "--seed",
                                           "99"};
    auto with_out = [&](const std::string& p, const std::string& threads) {
        std::vector<std::string> v = base;
        v.push_back("--out");
        v.push_back(p);
        v.push_back("--threads");
        v.push_back(threads);
        return v;
    };
    CHECK(run(with_out(p1, "1")).code == 0);
    CHECK(run(with_out(p2, "4")).code == 0);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1).find("path_id,exit_cause,t,L,steps") == 0);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("config file round-trips and flags win") {
    RunConfig cfg;
    cfg.l = 2;
    cfg.gamma = 0.25;
    cfg.seed = 4242;
    const std::string dumped = cfg.dump();
    RunConfig reload;
    reload.load_text(dumped);
    CHECK(reload.dump() == dumped);
    CHECK(reload.l == 2);
    CHECK(reload.gamma == 0.25);
    CHECK(reload.seed == 4242);

    CHECK_THROWS_AS(reload.load_text("no_such_key=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(reload.load_text("just garbage\n"), std::invalid_argument);
    RunConfig commented;
    commented.load_text("# comment\n\n  l=3   \ngamma=0.125 # trailing\n");
    CHECK(commented.l == 3);
    CHECK(commented.gamma == 0.125);

    // file value applies, explicit flag overrides
    const std::string cfg_path = temp_path("cfg.txt");
    {
        std::ofstream f(cfg_path);
        f << "l=1\nm=2\nprofile=power\ngamma=0.75\n";
    }
    const CliResult from_file = run({"--config", cfg_path, "classify"});
    CHECK(from_file.out.substr(0, from_file.out.find('\n')) == "transient");
    const CliResult overridden = run({"--config", cfg_path, "classify", "--gamma", "0.5"});
    CHECK(overridden.out.substr(0, overridden.out.find('\n')) == "recurrent");
    std::remove(cfg_path.c_str());
}

TEST_CASE("dump-config re-emits the effective configuration") {
    const CliResult r = run({"classify", "--l", "3", "--m", "2", "--gamma", "-0.4",
                             "--dump-config"});
    CHECK(r.code == 0);
    CHECK(r.out.find("l=3") != std::string::npos);
    CHECK(r.out.find("m=2") != std::string::npos);
    CHECK(r.out.find("gamma=-0.4") != std::string::npos);
    RunConfig parsed;
    parsed.load_text(r.out);
    CHECK(parsed.l == 3);
}

TEST_CASE("capacity subcommand writes the fit columns") {
    const std::string path = temp_path("cap.csv");
    const CliResult r = run({"capacity", "--l", "1", "--m", "2", "--profile", "constant",
                             "--a", "1", "--n", "4,8", "--out", path});
    CHECK((r.code == 0 || r.code == 2));  // two points may legitimately be inconclusive
    const std::string csv = slurp(path);
    CHECK(csv.find("n,cells,ell_n,iters,residual,fit_model") == 0);
    std::remove(path.c_str());
}

TEST_CASE("lyapunov subcommand emits the tabulation CSV") {
    const std::string path = temp_path("lyap.csv");
    const CliResult r = run({"lyapunov", "--l", "1", "--m", "2", "--profile", "power",
                             "--gamma", "0.5", "--sign", "plus", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("growth=diverging") != std::string::npos);
    const std::string csv = slurp(path);
    CHECK(csv.find("s,Gamma,f,fprime,maxDeltaU_violation") == 0);
    std::remove(path.c_str());
}

TEST_CASE("missing subcommand prints usage and exits 3") {
    CHECK(run({}).code == 3);
}
