#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks against the built binary.

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string out_file = std::string(MSTREAM_BUILD_DIR) + "/cli_test_output.txt";
    std::string cmd = std::string(MSTREAM_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    int raw = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return CliResult{WEXITSTATUS(raw), buf.str()};
}

std::string data(const char* name) {
    return std::string(MSTREAM_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("run exact on the four-cycle instance") {
    auto r = run_cli("run --instance " + data("four_cycle.json") +
                     " --algo exact --order file --opt");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"g_alive\": \"3/1\"") != std::string::npos);
    CHECK(r.output.find("\"opt_weight\": \"4/1\"") != std::string::npos);
    CHECK(r.output.find("\"ratio_vs_opt\": \"4/3\"") != std::string::npos);
}

TEST_CASE("streaming with the epsilon schedule") {
    auto r = run_cli("run --instance " + data("counterexample.json") +
                     " --algo streaming --epsilon 0.25 --order shuffle:9");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"algo\": \"streaming\"") != std::string::npos);
    CHECK(r.output.find("\"memory_bound\"") != std::string::npos);
}

TEST_CASE("submodular run is seeded and reports q") {
    auto r = run_cli("run --instance " + data("counterexample.json") +
                     " --algo submodular --alpha 1.5 --q 0.4 --seed 11");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"q\": \"2/5\"") != std::string::npos);
    CHECK(r.output.find("\"deterministic\": false") != std::string::npos);
}

TEST_CASE("exit codes distinguish failure classes") {
    CHECK(run_cli("run --instance /no/such/file.json").exit_code == 2);
    CHECK(run_cli("run --instance " + data("three_matroid.json") + " --algo exact")
              .exit_code == 2);
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);

    // oracle budget: 22 elements cannot be enumerated at the default cap
    std::string big_path = std::string(MSTREAM_BUILD_DIR) + "/cli_big_instance.json";
    {
        std::ofstream big(big_path);
        big << R"({"elements": [)";
        for (int i = 0; i < 22; ++i) {
            if (i) big << ",";
            big << R"({"id": "e)" << i << R"(", "weight": "1"})";
        }
        big << R"(], "matroids": [{"type": "uniform", "k": 3}]})";
    }
    CHECK(run_cli("opt --instance " + big_path).exit_code == 4);
}

TEST_CASE("verify-kernel passes on the bundled fixtures") {
    auto r = run_cli("verify-kernel --instance " + data("counterexample.json") +
                     " --order file");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"verified\": true") != std::string::npos);
    CHECK(r.output.find("\"in_enumeration\": true") != std::string::npos);
}

TEST_CASE("probe-conjecture on the three-matroid fixture") {
    auto r = run_cli("probe-conjecture --instance " + data("three_matroid.json") +
                     " --orders 30 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"counterexample_found\": false") != std::string::npos);
}

TEST_CASE("bench fans out a manifest") {
    std::string out_file = std::string(MSTREAM_BUILD_DIR) + "/cli_bench_out.json";
    auto r = run_cli("bench --manifest " + data("bench_example.json") + " --jobs 3 --out " +
                     out_file);
    CHECK(r.exit_code == 0);
    std::ifstream in(out_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    CHECK(bytes.find("four-cycle-exact") != std::string::npos);
    CHECK(bytes.find("three-matroid") != std::string::npos);
    CHECK(bytes.find("\"solution_certified\": false") != std::string::npos);  // k = 3 cell
}
