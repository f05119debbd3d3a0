// End-to-end checks of the hs2 executable: exit-status contract, output
// formats, and byte-level determinism. The binary path is injected by the
// build as HS2_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#ifndef HS2_CLI_PATH
#error "HS2_CLI_PATH must be defined by the build"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(HS2_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("cli: usage errors exit with status 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("no-such-subcommand").exit_code == 2);
    CHECK(run_cli("check-convexity --format not-a-format").exit_code == 2);
    CHECK(run_cli("run /no/such/config.json").exit_code == 2);
}

TEST_CASE("cli: --help exits zero") {
    const RunResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("check-convexity") != std::string::npos);
}

TEST_CASE("cli: passing check exits 0, failing check exits 1") {
    const RunResult ok =
        run_cli("check-convexity --field sq --samples 200 --seed 4");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("H_CONVEX") != std::string::npos);

    // mu(t) over the unit box is 12, so expecting 999 must fail the check.
    const RunResult bad = run_cli(
        "measure --field t --domain unit-box --resolution 6 --expected 999");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("cli: identical seeds give byte-identical reports") {
    const std::string args = "check-convexity --field sq --samples 300 --seed 11";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK_FALSE(a.output.empty());
}

TEST_CASE("cli: csv format and report files") {
    const RunResult csv = run_cli(
        "check-convexity --field sq --samples 100 --seed 2 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.find("verdict") != std::string::npos);
    CHECK(csv.output.find('{') == std::string::npos);

    const std::string prefix = "/tmp/hs2_cli_test_report";
    const RunResult withm = run_cli(
        "check-convexity --field sq --samples 100 --seed 2 --out " + prefix);
    CHECK(withm.exit_code == 0);
    std::ifstream js(prefix + ".json"), cs(prefix + ".csv");
    CHECK(js.good());
    CHECK(cs.good());
    std::string first_line;
    std::getline(cs, first_line);
    CHECK(first_line.find("verdict") != std::string::npos);
    std::remove((prefix + ".json").c_str());
    std::remove((prefix + ".csv").c_str());
}

TEST_CASE("cli: run subcommand consumes a config file") {
    const std::string path = "/tmp/hs2_cli_test_config.json";
    {
        std::ofstream out(path);
        out << R"({"scenario":"convexity","n":1,"field":"sq","seed":8,"samples":150})";
    }
    const RunResult r = run_cli("run " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"scenario\"") != std::string::npos);

    {
        std::ofstream out(path);
        out << "{ this is broken json";
    }
    CHECK(run_cli("run " + path).exit_code == 2);
    std::remove(path.c_str());
}
