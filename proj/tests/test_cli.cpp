#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/app.hpp"
#include "cli/run_config.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "stiefel-sr");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = stiefel_sr::cli::run(static_cast<int>(argv.size()), argv.data(),
                                        out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + "/" + name;
}

}  // namespace

TEST(Cli, GeodesicEvalZeroVelocityRows) {
  const Result r = run({"geodesic", "eval", "--n", "2", "--velocity", "zero",
                        "--samples", "10", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line.substr(line.find(',')));
  ASSERT_EQ(rows.size(), 10u);
  for (const std::string& row : rows) EXPECT_EQ(row, rows.front());
}

TEST(Cli, GeodesicEvalHalfTurn) {
  const std::string v =
      R"({"n":2,"k":1,"mode":"complex","re":[[0,1],[-1,0]],"im":[[0,0],[0,0]]})";
  const Result r = run({"geodesic", "eval", "--n", "2", "--velocity", v, "--t1",
                        "3.141592653589793", "--samples", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  const auto& last = j["samples"].back()["point"];
  EXPECT_NEAR(last["re"][0][0].get<double>(), -1.0, 1e-12);
  EXPECT_NEAR(last["re"][1][0].get<double>(), 0.0, 1e-12);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"geodesic", "eval", "--velocity", "zero"}).code, 2);
  EXPECT_EQ(run({"geodesic", "eval", "--n", "2", "--velocity", "{oops"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bracket", "--n", "3", "--k", "3"}).code, 2);
  EXPECT_EQ(run({"verify-L", "--n", "3", "--mode", "quaternion"}).code, 2);
}

TEST(Cli, InvariantViolationExitCode) {
  const std::string v =
      R"({"n":2,"k":1,"mode":"complex","re":[[1,0],[0,0]],"im":[[0,0],[0,0]]})";
  EXPECT_EQ(run({"geodesic", "eval", "--n", "2", "--velocity", v}).code, 3);
}

TEST(Cli, ClosedForms) {
  const Result ok = run({"verify", "closed-forms", "--trials", "50", "--seed", "3"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const nlohmann::json j = nlohmann::json::parse(ok.out);
  EXPECT_EQ(j["suites"].size(), 3u);
  for (const auto& s : j["suites"]) EXPECT_LT(s["max_error"].get<double>(), 1e-9);

  const Result flipped = run({"verify", "closed-forms", "--trials", "50", "--inject-sign-flip"});
  EXPECT_EQ(flipped.code, 1);

  const Result vacuous = run({"verify", "closed-forms", "--trials", "0"});
  EXPECT_EQ(vacuous.code, 0);
  EXPECT_NE(vacuous.err.find("warning"), std::string::npos);
}

TEST(Cli, Bracket) {
  const Result r = run({"bracket", "--n", "4", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["generating"].get<bool>());
  EXPECT_EQ(j["dim_H"], 8);
  EXPECT_EQ(j["target_dim"], 12);
  EXPECT_TRUE(j["montgomery"]["condition1"].get<bool>());
}

TEST(Cli, ExperimentsPassAndAliasesAgree) {
  const Result anti = run({"verify-antidiagonal", "--k", "2"});
  ASSERT_EQ(anti.code, 0) << anti.err;
  EXPECT_NEAR(nlohmann::json::parse(anti.out)["details"]["T0"].get<double>(),
              3.14159265358979 * std::sqrt(2.0) / 2.0, 1e-12);

  const Result l1 = run({"verify-L", "--n", "3", "--k", "1", "--samples", "100"});
  EXPECT_EQ(l1.code, 0) << l1.err;
  const Result l2 = run({"cutlocus", "verify-L", "--n", "3", "--k", "1", "--samples", "100"});
  EXPECT_EQ(l1.out, l2.out);

  EXPECT_EQ(run({"uniqueness", "--n", "3", "--samples", "50"}).code, 0);
  EXPECT_EQ(run({"cutlocus", "real-cutpoint", "--n", "3"}).code, 0);
}

TEST(Cli, SearchReportIsReproducible) {
  const std::vector<std::string> args{
      "cutlocus", "search", "--n", "2", "--k", "1", "--target", "antipodal",
      "--grid", R"({"a_count":16,"phase_count":16,"t_steps":64})"};
  const Result a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  std::vector<std::string> more = args;
  more.insert(more.end(), {"--workers", "2"});
  const Result b = run(more);
  EXPECT_EQ(a.out, b.out);
  const nlohmann::json j = nlohmann::json::parse(a.out);
  for (const char* key : {"target", "grid", "arrivals", "clusters", "min_length", "pass"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_GE(j["clusters"].get<int>(), 2);
}

TEST(Cli, ConfigFilePrecedence) {
  const std::string path = temp_path("stiefel_sr_config.json");
  {
    std::ofstream f(path);
    f << R"({"n": 5, "k": 2, "seed": 9, "samples": 5})";
  }
  const Result from_file = run({"verify-L", "--config", path});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  nlohmann::json j = nlohmann::json::parse(from_file.out);
  EXPECT_EQ(j["config"]["n"], 5);
  EXPECT_EQ(j["config"]["seed"], 9);
  EXPECT_EQ(j["samples"], 5);

  const Result overridden = run({"verify-L", "--config", path, "--n", "4"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  j = nlohmann::json::parse(overridden.out);
  EXPECT_EQ(j["config"]["n"], 4);
  EXPECT_EQ(j["config"]["k"], 2);

  {
    std::ofstream f(path);
    f << R"({"n": 5, "colour": "blue"})";
  }
  EXPECT_EQ(run({"verify-L", "--config", path}).code, 2);
  std::remove(path.c_str());
}

TEST(Cli, WritesOutputFile) {
  const std::string path = temp_path("stiefel_sr_bracket.json");
  ASSERT_EQ(run({"bracket", "--n", "3", "--k", "1", "--out", path}).code, 0);
  std::ifstream f(path);
  const nlohmann::json j = nlohmann::json::parse(f);
  EXPECT_TRUE(j["pass"].get<bool>());
  std::remove(path.c_str());
}
