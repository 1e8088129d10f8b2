#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhlat/cli.hpp"
#include "qhlat/serialize.hpp"

using namespace qhlat;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qhlat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    const auto r = run(std::move(args));
    REQUIRE(r.code == 0);
    return Json::parse(r.out);
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("qhlat_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("spectrum of the two-site preset") {
    const auto j = run_json({"spectrum", "--preset", "single:1", "--mag", "0.5", "--dim", "2"});
    CHECK(j["command"] == "spectrum");
    const auto& ev = j["result"]["eigenvalues"];
    REQUIRE(ev.size() == 2);
    CHECK(ev[0][0].get<double>() == doctest::Approx(-0.86603).epsilon(1e-5));
    CHECK(ev[1][0].get<double>() == doctest::Approx(0.86603).epsilon(1e-5));
    CHECK(j["result"]["is_real"] == true);
    CHECK(j["timestamp"].is_null());
}

TEST_CASE("spectrum of the free six-site lattice") {
    const auto j = run_json({"spectrum", "--params", "0,0,0"});
    CHECK(j["result"]["eigenvalues"].size() == 6);
    CHECK(j["result"]["is_real"] == true);
    CHECK(j["config"]["dim"] == 6);
}

TEST_CASE("uniform ten-site preset near its reality boundary") {
    const auto ep = run_json({"ep", "--preset", "uniform", "--dim", "10"});
    const double pc = ep["result"]["p_crit"].get<double>();
    CHECK(std::abs(pc - 0.1413) <= 0.05 * 0.1413);
    const auto below = run_json({"spectrum", "--preset", "uniform", "--dim", "10", "--mag", std::to_string(0.99 * pc)});
    const auto above = run_json({"spectrum", "--preset", "uniform", "--dim", "10", "--mag", std::to_string(1.01 * pc)});
    CHECK(below["result"]["is_real"] == true);
    CHECK(above["result"]["is_real"] == false);
}

TEST_CASE("exit codes") {
    CHECK(run({"spectrum", "--bogus"}).code == 2);
    CHECK(run({"spectrum", "--params", "0.1,abc"}).code == 2);
    CHECK(run({"spectrum"}).code == 2);
    CHECK(run({"spectrum", "--params", "0.1", "--dim", "4"}).code == 2);
    CHECK(run({"spectrum", "--params", "0.1", "--format", "ppm"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"ep", "--preset", "single:1", "--dim", "2", "--pmax", "0.5"}).code == 4);
    CHECK(run({"ep", "--preset", "single:1", "--dim", "2", "--tol-param", "1e-30"}).code == 3);
    CHECK(run({"pseudometrics", "--params", "1.2", "--route", "spectral"}).code == 3);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--version"}).code == 0);
}

TEST_CASE("two-site exceptional point") {
    const auto j = run_json({"ep", "--preset", "single:1", "--dim", "2"});
    CHECK(std::abs(j["result"]["p_crit"].get<double>() - 1.0) <= 1e-6);
    const auto csv = run({"ep", "--params", "1", "--format", "csv"});
    CHECK(csv.out.rfind("direction,dimension,p_crit", 0) == 0);
}

TEST_CASE("tables record their convention") {
    const auto j = run_json({"table2", "--dims", "10", "--convention", "param-count"});
    CHECK(j["convention"] == "param-count");
    CHECK(j["result"]["rows"][0]["cells"][0]["dimension"] == 20);
    const auto t = run({"table1", "--dims", "10", "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("1.0000") != std::string::npos);
    CHECK(run({"table1", "--dims", "6"}).code == 2);
    CHECK(run({"table1", "--dims", "9"}).code == 2);
    CHECK(run({"table2", "--convention", "other"}).code == 2);
}

TEST_CASE("pseudometrics output") {
    const auto j = run_json({"pseudometrics", "--params", "0.3,0.2"});
    const auto& p2 = j["result"]["elements"][1]["matrix"];
    CHECK(p2[0][3][0].get<double>() == doctest::Approx(-0.05).epsilon(1e-9));
    CHECK(j["result"]["normalization"] == "staircase");
    const auto t = run({"pseudometrics", "--preset", "alternating", "--mag", "0.05", "--dim", "6", "--patterns",
                        "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("1I.I.I\nI1....\n") != std::string::npos);
    const auto free = run({"pseudometrics", "--params", "0,0,0", "--dim", "6", "--patterns", "--format", "text"});
    CHECK(free.out.find("..1...\n.1.1..\n1.1.1.\n.1.1.1\n..1.1.\n...1..\n") != std::string::npos);
}

TEST_CASE("metric command") {
    const auto id = run_json({"metric", "--params", "0,0"});
    CHECK(id["result"]["positivity"] == "positive");
    const auto par = run_json({"metric", "--params", "0,0", "--eps", "0,0,0,1"});
    CHECK(par["result"]["positivity"] == "indefinite");
    CHECK(par["result"]["quasi_hermitian"] == true);
    const auto alt = run_json({"metric", "--preset", "alternating", "--mag", "0.05", "--dim", "6"});
    CHECK(alt["result"]["positivity"] == "positive");
    CHECK(alt["result"]["margin"].get<double>() > 0.0);
    const auto f = run({"metric", "--params", "0,0", "--frontier", "--frontier-range", "-0.9,0.9", "--frontier-steps",
                        "3", "--format", "csv"});
    CHECK(f.code == 0);
    CHECK(f.out.rfind("eps1,eps2,eps3,eps4,positivity,margin\n", 0) == 0);
    CHECK(f.out.find("1,0,0,0,positive,") != std::string::npos);
    const auto beyond = run_json({"metric", "--params", "1.2", "--frontier", "--samples", "2000", "--free-first"});
    CHECK(beyond["result"]["frontier"]["positive_count"] == 0);
    CHECK(run({"metric", "--params", "0,0", "--eps", "1,0"}).code == 2);
}

TEST_CASE("conjecture command") {
    const auto j = run_json({"conjecture"});
    CHECK(j["result"]["matches_reference"] == true);
    CHECK(j["result"]["entries_confined"] == true);
    CHECK(j["result"]["even_parameter_free"] == true);
    CHECK(run({"conjecture", "--dim", "7"}).code == 2);
}

TEST_CASE("domain outputs and determinism under threads") {
    const std::vector<std::string> base = {"domain", "--dim", "6", "--steps", "25", "--range", "-1.5,1.5"};
    auto with = [&](std::vector<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return run(a);
    };
    const auto a = with({"--threads", "1"});
    const auto b = with({"--threads", "4"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto ppm = with({"--format", "ppm"});
    CHECK(ppm.out.rfind("P6\n25 25\n255\n", 0) == 0);
    CHECK(ppm.out.size() == std::string("P6\n25 25\n255\n").size() + 3 * 625);
    const auto csv = with({"--format", "csv"});
    CHECK(csv.out.rfind("p1,p2,is_real,max_imag\n", 0) == 0);
    CHECK(with({"--axes", "1,1"}).code == 2);
    CHECK(with({"--steps", "0"}).code == 2);
}

TEST_CASE("output file") {
    const auto path = temp_path("out.json");
    std::remove(path.c_str());
    const auto r = run({"spectrum", "--params", "0.2", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(Json::parse(slurp(path))["command"] == "spectrum");
    std::remove(path.c_str());
}

TEST_CASE("config file precedence") {
    const auto path = temp_path("config.txt");
    {
        std::ofstream f(path);
        f << "# defaults\nformat = text\ntol-imag=1e-6\neps=1,0\n";
    }
    setenv("QHLAT_CONFIG", path.c_str(), 1);
    const auto text = run({"spectrum", "--params", "0.2"});
    CHECK(text.code == 0);
    CHECK(text.out.find("real spectrum: yes") != std::string::npos);
    const auto j = run({"spectrum", "--params", "0.2", "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(Json::parse(j.out)["config"]["tol_imag"].get<double>() == 1e-6);
    {
        std::ofstream f(path);
        f << "colour=blue\n";
    }
    CHECK(run({"spectrum", "--params", "0.2"}).code == 2);
    setenv("QHLAT_CONFIG", (path + ".missing").c_str(), 1);
    CHECK(run({"spectrum", "--params", "0.2"}).code == 2);
    unsetenv("QHLAT_CONFIG");
    std::remove(path.c_str());
}

TEST_CASE("timestamp from SOURCE_DATE_EPOCH") {
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    const auto j = run_json({"spectrum", "--params", "0.2"});
    CHECK(j["timestamp"].get<long long>() == 1700000000);
    unsetenv("SOURCE_DATE_EPOCH");
}
