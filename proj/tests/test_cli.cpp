#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "lipbvp/cli.hpp"
#include "lipbvp/serialization.hpp"

using namespace lipbvp;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "lipbvp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("range reports the cone corollary") {
    const auto r = run({"range", "--alpha", "1.5", "--beta", "0", "--json"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    REQUIRE(j["p_phi"] == 1.5);
    REQUIRE(j["p_minus"] == 1.0);
    REQUIRE(j["p_plus"] == 3.0);
    REQUIRE(j["spr_plus"] == true);

    const auto h = Json::parse(run({"range", "--alpha", "1", "--beta", "0", "--json"}).out);
    REQUIRE(h["p_minus"] == 1.0);
    REQUIRE(h["p_plus"] == "inf");
}

TEST_CASE("range sweep emits one CSV row per pair") {
    const auto r = run({"range", "--sweep", "--alphas", "0.5,1.5", "--betas", "0,1,2"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    int rows = 0;
    std::getline(in, line);
    REQUIRE(line.rfind("alpha,beta,p_phi", 0) == 0);
    while (std::getline(in, line)) ++rows;
    REQUIRE(rows == 6);
}

TEST_CASE("usage errors exit with 2") {
    REQUIRE(run({}).code == 2);
    REQUIRE(run({"range", "--alpha", "1", "--weight", "cubic:3"}).code == 2);
    REQUIRE(run({"range", "--alpha", "2.5"}).code == 2);
    REQUIRE(run({"range", "--alpha", "1", "--beta", "0", "--weight", "one"}).code == 2);
    REQUIRE(run({"solve", "--problem", "heat", "--datum", "const:1"}).code == 2);
    REQUIRE(run({"solve", "--problem", "dirichlet", "--datum", "indicator:2,1"}).code == 2);
    REQUIRE(run({"check", "--weight", "power:1", "--class", "bmo"}).code == 2);
    REQUIRE(run({"acceptance", "--criteria", "11"}).code == 2);
}

TEST_CASE("class checks") {
    const auto ap = run({"check", "--weight", "power:0.5", "--class", "ap", "--p", "2"});
    REQUIRE(ap.code == 0);
    REQUIRE(Json::parse(ap.out)["member"] == true);
    const auto apr = run({"check", "--weight", "power:1", "--class", "apr", "--p", "2"});
    REQUIRE(apr.code == 0);
    const auto notap = run({"check", "--weight", "power:1", "--class", "ap", "--p", "2"});
    REQUIRE(notap.code == 1);
    REQUIRE(Json::parse(notap.out)["member"] == false);
    const auto spr = run({"check", "--pair", "phiprime,pushforward", "--alpha", "1.5", "--beta", "0", "--class",
                          "spr", "--p", "3"});
    REQUIRE(spr.code == 0);
    REQUIRE(Json::parse(spr.out)["verdict"]["holds"] == true);
}

TEST_CASE("solve") {
    const auto d = run({"solve", "--problem", "dirichlet", "--datum", "const:1", "--alpha", "1.5", "--json"});
    REQUIRE(d.code == 0);
    REQUIRE(Json::parse(d.out)["diagnostics"]["boundary_error"].get<double>() <= 1e-10);
    const auto n = run({"solve", "--problem", "neumann", "--alpha", "1", "--datum", "indicator:-1,1", "--p", "2", "--json"});
    REQUIRE(n.code == 0);
    const auto jn = Json::parse(n.out);
    REQUIRE(jn["diagnostics"]["boundary_error"].get<double>() <= 1e-3);
    REQUIRE(jn["diagnostics"]["ratio"].is_number());
    const auto r = run({"solve", "--problem", "regularity", "--datum", "bump:0,1", "--alpha", "1.5", "--p", "2"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("checks pass") != std::string::npos);
    const auto h1 = run({"solve", "--problem", "neumann", "--mode", "h1", "--weight", "power:-0.5", "--datum", "atom:0.5,1", "--json"});
    REQUIRE(h1.code == 0);
    REQUIRE(Json::parse(h1.out)["diagnostics"]["guaranteed"] == true);
}

TEST_CASE("sparse-test CSV is deterministic") {
    const std::vector<std::string> args{"sparse-test", "--alpha", "1.5", "--beta", "0", "--p", "3", "--levels", "2", "--seed", "5"};
    const auto a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out.rfind("family_id,E_spec,p,numerator,denominator,ratio\n", 0) == 0);
    REQUIRE(a.out.find("family_id", 10) == std::string::npos);
}

TEST_CASE("acceptance harness") {
    const auto ok = run({"acceptance", "--criteria", "1,4"});
    REQUIRE(ok.code == 0);
    REQUIRE(ok.out.find("PASS  criterion 1") != std::string::npos);
    const auto bad = run({"acceptance", "--criteria", "1,4", "--inject-error", "4"});
    REQUIRE(bad.code == 1);
    REQUIRE(bad.out.find("FAIL  criterion 4: harmonic solver fidelity") != std::string::npos);
    REQUIRE(bad.out.find("PASS  criterion 1") != std::string::npos);
    const auto j1 = run({"acceptance", "--criteria", "1,4,8", "--json", "--seed", "9"});
    const auto j2 = run({"acceptance", "--criteria", "1,4,8", "--json", "--seed", "9"});
    REQUIRE(j1.out == j2.out);
    REQUIRE(Json::parse(j1.out)["passed"] == true);
}
