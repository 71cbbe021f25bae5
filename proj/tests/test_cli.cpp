#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "tsp_cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = tsp::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
    const Result r = run(std::move(args));
    EXPECT_EQ(r.code, 0) << r.err;
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, ClassifyBoundaryPointSixDigits) {
    const auto j = run_json({"classify", "--lambda", "1,0.707107,0,0.707107"});
    EXPECT_TRUE(j["report"]["positive"].get<bool>());
    EXPECT_TRUE(j["criteria"]["2tsp"]["satisfied"].get<bool>());
    EXPECT_NEAR(j["criteria"]["2tsp"]["worst_slack"].get<double>(), 0.0, 1e-6);
    EXPECT_FALSE(j["criteria"]["3tsp"]["satisfied"].get<bool>());
}

TEST(Cli, ClassifyExactToleranceRejectsRoundedInput) {
    const auto j = run_json({"classify", "--lambda", "1,0.707107,0,0.707107", "--tol", "0"});
    EXPECT_FALSE(j["criteria"]["2tsp"]["satisfied"].get<bool>());
}

TEST(Cli, ClassifyThreeValueLambda) {
    const auto j = run_json({"classify", "--lambda", "0.5,0.5,0.5", "--n", "4"});
    EXPECT_EQ(j["map"]["lambda"][0].get<double>(), 1.0);
    EXPECT_FALSE(j["map"].contains("t"));
    EXPECT_TRUE(j["criteria"]["ntsp_necessary"]["satisfied"].get<bool>());
    EXPECT_EQ(j["criteria"]["ntsp_necessary"]["n"].get<int>(), 4);
}

TEST(Cli, ClassifyMapJsonRoundTrip) {
    const auto j = run_json({"classify", "--map", R"({"lambda":[1,0.3,0.3,0.1],"t":[0,0,0.5]})"});
    EXPECT_EQ(j["map"]["t"][2].get<double>(), 0.5);
    EXPECT_EQ(j["report"]["positivity_method"], "nonunital-reduction");
    EXPECT_TRUE(j["criteria"].contains("2tsp"));
    // Feeding the echoed map back in gives the same output.
    const auto again = run_json({"classify", "--map", j["map"].dump()});
    EXPECT_EQ(again, j);
}

TEST(Cli, ClassifyMapFile) {
    const auto path = std::filesystem::temp_directory_path() / "tsp_cli_map.json";
    std::ofstream(path) << R"({"lambda":[1,1,-1,1]})";
    const auto j = run_json({"classify", "--map", path.string()});
    EXPECT_FALSE(j["report"]["cp"].get<bool>());
    EXPECT_TRUE(j["report"]["ccp"].get<bool>());
    std::filesystem::remove(path);
}

TEST(Cli, RegionDepolarizingCsv) {
    const Result r = run({"region", "--criterion", "depolarizing", "--grid", "41", "--format", "csv", "--samples", "64",
                          "--restarts", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "q1,q2,analytic,oracle,flag");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        double q1, q2;
        int analytic;
        char comma;
        std::istringstream row(line);
        row >> q1 >> comma >> q2 >> comma >> analytic;
        if (analytic == 1) { EXPECT_GE(q1 * q2, -1.0 / 3.0 - 1e-12) << line; }
    }
    EXPECT_EQ(rows, 41 * 41);
}

TEST(Cli, RegionOutputIsByteIdentical) {
    const std::vector<std::string> args{"region", "--criterion", "2tsp", "--grid", "4", "--threads", "3", "--seed", "9"};
    const Result a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    std::vector<std::string> single = args;
    single[6] = "1";
    EXPECT_EQ(run(single).out, a.out);
}

TEST(Cli, RegionWritesFile) {
    const auto path = std::filesystem::temp_directory_path() / "tsp_cli_region.json";
    const Result r = run({"region", "--criterion", "3tsp", "--grid", "3", "--out", path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["points"].size(), 27u);
    std::filesystem::remove(path);
}

TEST(Cli, SeedEnvironmentOverride) {
    const std::vector<std::string> args{"region", "--criterion", "depolarizing", "--grid", "3", "--samples", "4",
                                        "--restarts", "1", "--seed", "1"};
    const std::string with_flag = run(args).out;
    std::vector<std::string> other = args;
    other.back() = "2";
    ::setenv("TSP_SEED", "1", 1);
    const std::string with_env = run(other).out;
    ::unsetenv("TSP_SEED");
    EXPECT_EQ(with_flag, with_env);
}

TEST(Cli, Verify) {
    const auto j = run_json({"verify", "--criterion", "positive", "--grid", "5"});
    EXPECT_TRUE(j["consistent"].get<bool>());
    EXPECT_EQ(j["points"].get<int>(), 125);
    EXPECT_TRUE(j["disagreements"].empty());
}

TEST(Cli, LiftDiagonalFamily) {
    const auto j = run_json({"lift", "--lambda", "1,0,1", "--n", "1"});
    EXPECT_NEAR(j["lambda_tilde"][0].get<double>(), 0.63, 5e-3);
    EXPECT_EQ(j["lambda_tilde"][1].get<double>(), 0.0);
    EXPECT_NEAR(j["lambda_tilde"][2].get<double>(), 0.63, 5e-3);
    EXPECT_EQ(j["x"], j["x_max"]);
}

TEST(Cli, Reduce) {
    const auto j = run_json({"reduce", "--t", "0", "--lambda", "0.2,0.4,0.6"});
    EXPECT_NEAR(j["tilde_lambda_normalized"][2].get<double>(), 0.4, 1e-14);
}

TEST(Cli, Witness) {
    const auto j = run_json({"witness", "--family", "ghz", "--n", "2", "--q", "0.8"});
    EXPECT_NEAR(j["threshold_q"].get<double>(), 0.71, 0.02);
    EXPECT_EQ(j["depth_lower_bound"].get<int>(), 3);
    EXPECT_EQ(j["witness_lambda"].size(), 3u);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"bogus"}).code, 1);
    EXPECT_EQ(run({"classify"}).code, 1);
    EXPECT_EQ(run({"classify", "--lambda", "1,2"}).code, 1);
    EXPECT_EQ(run({"classify", "--map", "{not json"}).code, 1);
    EXPECT_EQ(run({"region", "--criterion", "depolarizing", "--format", "xml"}).code, 1);
    EXPECT_EQ(run({"witness", "--family", "cluster"}).code, 1);
    EXPECT_EQ(run({"region", "--criterion", "4tsp"}).code, 2);
    EXPECT_EQ(run({"lift", "--lambda", "0.1,0,0", "--n", "1"}).code, 2);
    EXPECT_EQ(run({"lift", "--lambda", "1,0,1", "--n", "1", "--x", "3"}).code, 2);
    EXPECT_EQ(run({"reduce", "--t", "0.9", "--lambda", "0,0,0.5"}).code, 2);
    EXPECT_EQ(run({"classify", "--lambda", "2,0,0"}).code, 0);  // not positive, but a valid map
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrorMessage) {
    const Result r = run({"lift", "--lambda", "0.1,0,0", "--n", "1"});
    EXPECT_NE(r.err.find("lift requires"), std::string::npos);
}
