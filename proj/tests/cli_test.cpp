#include <doctest.h>

#include <sstream>

#include "qfc/cli.hpp"

using namespace qfc;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("solve prints the verdict and sets the exit code") {
    const auto winning = run_cli({"solve", "--q", "3", "--state", "0,9", "--n", "4"});
    CHECK(winning.exit_code == 0);
    CHECK(winning.out == "winning\n");
    const auto losing = run_cli({"solve", "--q", "3", "--state", "0,2", "--n", "2"});
    CHECK(losing.exit_code == 1);
    CHECK(losing.out == "losing\n");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({"solve", "--q", "3"}).exit_code == 2);
    CHECK(run_cli({"frobnicate"}).exit_code == 2);
    CHECK(run_cli({"solve", "--q", "1", "--state", "1", "--n", "1"}).exit_code == 2);
}

TEST_CASE("rate-region emits the requested grid") {
    const auto result = run_cli({"rate-region", "--q", "3", "--points", "5"});
    CHECK(result.exit_code == 0);
    std::istringstream lines(result.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "f,R_volume,R_translation,R_construction");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 5);
    // construction hits zero at the final grid point f = 1/2
    CHECK(result.out.substr(result.out.size() - 2) == "0\n");
}

TEST_CASE("bounds reports the converse data") {
    const auto result = run_cli({"bounds", "--q", "3", "--M", "9", "--e", "1", "--n", "4"});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("volume 81") != std::string::npos);
    CHECK(result.out.find("volume_bound holds") != std::string::npos);
    CHECK(result.out.find("min_blocklength_converse 4") != std::string::npos);
    CHECK(result.out.find("achievable_blocklength 7") != std::string::npos);
    const auto failing = run_cli({"bounds", "--q", "3", "--M", "9", "--e", "1", "--n", "3"});
    CHECK(failing.exit_code == 1);
}

TEST_CASE("table check passes and prints exact integers") {
    const auto result = run_cli({"table", "--q", "3", "--m", "4", "--k", "4", "--check"});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("96 48 24 16") != std::string::npos);
}

TEST_CASE("strategy export is winning-only") {
    const auto ok = run_cli({"strategy", "--q", "3", "--state", "4,1", "--n", "2"});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("\"partition\"") != std::string::npos);
    const auto bad = run_cli({"strategy", "--q", "3", "--state", "0,2", "--n", "2"});
    CHECK(bad.exit_code == 1);
}

TEST_CASE("codec build, decode, simulate and verify round-trip through files") {
    const std::string path = "qfc_cli_test_code.json";
    const auto build = run_cli({"codec", "build", "--M", "9", "--e", "1", "--q", "3", "--n", "4",
                                "--out", path});
    REQUIRE(build.exit_code == 0);

    const auto decode = run_cli({"codec", "decode", "--code", path, "--received", "0,0,0,0"});
    CHECK(decode.exit_code == 0);

    const auto sim = run_cli({"simulate", "--code", path, "--theta", "4", "--adversary", "greedy"});
    CHECK(sim.exit_code == 0);
    CHECK(sim.out.find("true") != std::string::npos);

    const auto verify = run_cli({"verify", "--code", path});
    CHECK(verify.exit_code == 0);
    CHECK(verify.out.find("OK") != std::string::npos);

    const auto table_build = run_cli({"codec", "build", "--M", "6", "--e", "1", "--q", "3",
                                      "--via", "table", "--out", path});
    REQUIRE(table_build.exit_code == 0);
    const auto table_verify = run_cli({"verify", "--code", path, "--threads", "2"});
    CHECK(table_verify.exit_code == 0);
    std::remove(path.c_str());
}

TEST_CASE("deterministic output for identical invocations") {
    const auto a = run_cli({"rate-region", "--q", "4", "--points", "17"});
    const auto b = run_cli({"rate-region", "--q", "4", "--points", "17"});
    CHECK(a.out == b.out);
    const auto s1 = run_cli({"strategy", "--q", "3", "--state", "0,9", "--n", "4"});
    const auto s2 = run_cli({"strategy", "--q", "3", "--state", "0,9", "--n", "4"});
    CHECK(s1.out == s2.out);
}

TEST_SUITE_END();
