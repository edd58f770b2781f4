#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "orbifold/cli.hpp"
#include "orbifold/errors.hpp"

using namespace orbifold;
using nlohmann::json;

namespace {

struct Result {
    int code = -1;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Result run_in_process(std::vector<std::string> args) {
    args.insert(args.begin(), "orbifold");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string binary() {
    const char* b = std::getenv("ORBIFOLD_BIN");
    return b ? b : "";
}

Result run_binary(const std::string& args) {
    Result r;
    std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
    int status = pclose(f);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("orbifold_cli_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("parse_cf and parse_fraction") {
    CHECK(cli::parse_cf("0,2,2").spec() == "cf[0,2,2,...]");
    CHECK(cli::parse_cf("0,(2)").spec() == "cf[0,(2)]");
    CHECK(cli::parse_cf("0, 4,(1,1,2)").spec() == "cf[0,4,(1,1,2)]");
    CHECK_THROWS(cli::parse_cf(""));
    CHECK_THROWS(cli::parse_cf("0,(2),3"));
    CHECK_THROWS(cli::parse_cf("0,x"));
    CHECK(cli::parse_fraction("3/2") == std::pair<std::int64_t, std::int64_t>{3, 2});
    CHECK(cli::parse_fraction("3") == std::pair<std::int64_t, std::int64_t>{3, 1});
    CHECK_THROWS_AS(cli::parse_fraction("3/0"), DomainError);
}

TEST_CASE("convergents subcommand") {
    auto r = run_in_process({"convergents", "--cf", "0,2,2,2,2", "--count", "4"});
    REQUIRE(r.code == cli::kPass);
    auto rows = r.doc()["rows"];
    REQUIRE(rows.size() == 4);
    CHECK(rows[1]["p"] == 1);
    CHECK(rows[1]["q"] == 2);
    CHECK(rows[3]["p"] == 5);
    CHECK(rows[3]["q"] == 12);
    for (const auto& row : rows) CHECK(row["in_scope"] == true);

    auto d = run_in_process({"convergents", "--decimal", "0.4142135623", "--digits", "10", "--count", "3"});
    CHECK(d.code == cli::kPass);
    CHECK(d.doc()["rows"].size() == 3);

    CHECK(run_in_process({"convergents", "--cf", ""}).code == cli::kUsage);
    CHECK(run_in_process({"convergents"}).code == cli::kUsage);
    CHECK(run_in_process({"convergents", "--cf", "0,2", "--decimal", "0.5", "--digits", "3"}).code == cli::kUsage);
    CHECK(run_in_process({"convergents", "--decimal", "0.41", "--digits", "2", "--count", "40"}).code == cli::kUsage);
}

TEST_CASE("foursquare and select-abc") {
    auto f = run_in_process({"foursquare", "--p", "1000003"});
    REQUIRE(f.code == cli::kPass);
    auto d = f.doc();
    long s = 0;
    for (long v : d["pj"].get<std::vector<long>>()) s += v * v;
    CHECK(s == 1000003);
    auto a = run_in_process({"select-abc", "--pq", "5/12"});
    REQUIRE(a.code == cli::kPass);
    CHECK(a.doc()["pass"] == true);
    CHECK(run_in_process({"select-abc", "--pq", "4/12"}).code == cli::kUsage);
}

TEST_CASE("certify bundle, CSV and determinism") {
    auto dir = scratch("certify");
    auto r = run_in_process({"certify", "--cf", "0,(2)", "--pq", "1/2", "--out", dir.string(), "--emit-csv"});
    REQUIRE(r.code == cli::kPass);
    auto d = r.doc();
    CHECK(d["pass"] == true);
    CHECK(d["certificates"].size() == 7);
    for (const auto& c : d["certificates"]) {
        CAPTURE(c["claim"].get<std::string>());
        CHECK(c["pass"] == true);
        for (auto key : {"claim", "inputs", "values", "threshold", "pass", "tolerance", "tail_budget", "checks", "notes",
                         "skipped"})
            CHECK(c.contains(key));
    }
    CHECK(d["input_theta"]["spec"] == "cf[0,(2)]");
    CHECK(d["input_theta"]["digest"].get<std::string>().size() == 16);

    std::ifstream js(dir / "certify.json");
    std::stringstream ss;
    ss << js.rdbuf();
    CHECK(ss.str() == r.out);

    for (auto name : {"ff_coefficients.csv", "primitive_coefficients.csv", "fU1f_coefficients.csv"}) {
        std::ifstream csv(dir / name);
        REQUIRE(csv.good());
        std::string header;
        std::getline(csv, header);
        CHECK(header == "m,n,re,im,modulus");
        std::string line;
        int rows = 0;
        while (std::getline(csv, line)) ++rows;
        // weights that underflow are not stored
        CHECK(rows > 400);
        CHECK(rows <= 25 * 25);
    }

    auto again = run_in_process({"certify", "--cf", "0,(2)", "--pq", "1/2", "--out", dir.string(), "--emit-csv"});
    CHECK(again.out == r.out);
    std::filesystem::remove_all(dir);
}

TEST_CASE("certify refusals and negative control") {
    CHECK(run_in_process({"certify", "--cf", "0,(2)", "--pq", "2/4"}).code == cli::kUsage);
    // 2/3 normalizes to 1/3 against 1 - theta, where q|q theta - p| > 2
    auto scope = run_in_process({"certify", "--cf", "0,(2)", "--pq", "2/3"});
    CHECK(scope.code == cli::kUsage);
    CHECK(scope.err.find("out of scope") != std::string::npos);
    CHECK(run_in_process({"certify", "--cf", "0,(2)", "--pq", "1/2", "--emit-csv"}).code == cli::kUsage);
    CHECK(run_in_process({"certify", "--cf", "0,(2)", "--pq", "1/2", "--tol", "0"}).code == cli::kUsage);
    auto bad = run_in_process({"certify", "--cf", "0,(2)", "--pq", "5/12", "--override-abc", "0,1,0"});
    CHECK(bad.code == cli::kClaimFailure);
    CHECK(bad.doc()["pass"] == false);
}

TEST_CASE("verify-theta") {
    auto r = run_in_process({"verify-theta"});
    REQUIRE(r.code == cli::kPass);
    CHECK(r.doc()["tolerance"] == 1e-10);
    CHECK(run_in_process({"verify-theta", "--grid-points", "100000"}).code == cli::kPass);
    CHECK(run_in_process({"verify-theta", "--tol", "0"}).code == cli::kUsage);
}

TEST_CASE("spectral") {
    auto r = run_in_process({"spectral", "--rho", "3/2", "--cutoff", "10"});
    REQUIRE(r.code == cli::kPass);
    CHECK(r.doc()["min_eigenvalue"].get<double>() > 0);
    CHECK(run_in_process({"spectral", "--rho", "1/2"}).code == cli::kUsage);
    auto p = run_in_process({"spectral", "--rho", "1", "--probe-scalar"});
    REQUIRE(p.code == cli::kPass);
    CHECK(std::abs(p.doc()["probe_scalar"].get<double>()) < 1e-10);
    CHECK(run_in_process({"spectral", "--rho", "2", "--probe-scalar"}).code == cli::kUsage);
}

TEST_CASE("gdelta-scan") {
    auto r = run_in_process({"gdelta-scan", "--cf", "0,(2,1,3)", "--N", "2", "--M", "3", "--count", "40"});
    REQUIRE(r.code == cli::kPass);
    auto hits = r.doc()["hits"];
    CHECK(hits.size() >= 10);
    for (const auto& h : hits) CHECK(h["satisfied"] == true);
}

TEST_CASE("binary exit codes") {
    if (binary().empty()) {
        MESSAGE("ORBIFOLD_BIN not set; binary checks skipped");
        return;
    }
    CHECK(run_binary("certify --cf '0,(2)' --pq 1/2").code == 0);
    CHECK(run_binary("certify --cf '0,(2)' --pq 5/12 --override-abc 0,1,0").code == 1);
    CHECK(run_binary("spectral --rho 1/2").code == 2);
    CHECK(run_binary("no-such-command").code == 2);
    CHECK(run_binary("--help").code == 0);
    auto a = run_binary("certify --cf '0,(2)' --index 5");
    auto b = run_binary("certify --cf '0,(2)' --index 5");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
