#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "eoe/cli/cli.hpp"
#include "eoe/cli/config.hpp"

namespace eoe::cli {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

class SeedEnv : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("EOE_SEED"); }
  void TearDown() override { unsetenv("EOE_SEED"); }
};

TEST(Config, StrictParsing) {
  const auto cfg = ExperimentConfig::parse("graph = ring:6  # comment\n\nlambda=2\ns_grid = 0.1, 1,5\n");
  EXPECT_EQ(cfg.text("graph"), "ring:6");
  EXPECT_DOUBLE_EQ(cfg.number("lambda"), 2.0);
  EXPECT_EQ(cfg.numbers("s_grid"), (std::vector<double>{0.1, 1.0, 5.0}));

  auto key_of = [](const std::string& text) {
    try {
      (void)ExperimentConfig::parse(text);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<accepted>");
  };
  EXPECT_EQ(key_of("lambdaa = 1\n"), "lambdaa");
  EXPECT_EQ(key_of("lambda = 1\nlambda = 2\n"), "lambda");
  EXPECT_EQ(key_of("lambda = -1\n"), "lambda");
  EXPECT_EQ(key_of("gamma = 0\n"), "gamma");
  EXPECT_EQ(key_of("reps = 0\n"), "reps");
  EXPECT_EQ(key_of("reps = 2.5\n"), "reps");
  EXPECT_EQ(key_of("s_grid = 1,-1\n"), "s_grid");
  EXPECT_EQ(key_of("n_grid = 10,10\n"), "n_grid");
  EXPECT_EQ(key_of("graph = cube:3\n"), "graph");
  EXPECT_EQ(key_of("schedule = nope\n"), "schedule");
  EXPECT_EQ(key_of("engine = fast\n"), "engine");
  EXPECT_EQ(key_of("lambda = nan\n"), "lambda");
}

TEST(Config, EchoRoundTrip) {
  const auto cfg = ExperimentConfig::parse(
      "schedule = ring\nschedule.lambda.exponent = 1.3333333333333333\nn_grid = 100,1000\nreps=50\nseed=7\n"
      "s_grid = 0.1,0.30000000000000004\nquick = true\n");
  const std::string echo = cfg.echo();
  EXPECT_EQ(ExperimentConfig::parse(echo), cfg);
  EXPECT_EQ(ExperimentConfig::parse(echo).echo(), echo);
  // Catalog order, not input order.
  EXPECT_EQ(echo.rfind("reps = 50\nseed = 7\n", 0), 0u);
}

TEST_F(SeedEnv, TransformExample) {
  const auto r = run({"transform", "--graph", "ring:6", "--lambda", "2", "--gamma", "0.5", "--s-grid", "0.1,1,5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "subject,family,n,m,lambda,gamma,s,value,provenance");
  double prev = 1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields(lines[i]);
    ASSERT_EQ(f.size(), 9u);
    EXPECT_EQ(f[0], "T");
    EXPECT_EQ(f[2], "6");
    EXPECT_EQ(f[8], "closed-form");
    const double v = std::stod(f[7]);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST_F(SeedEnv, SimulateIsDeterministic) {
  const std::vector<std::string> args = {"simulate", "--graph", "complete:3", "--lambda", "1",
                                         "--gamma", "1", "--reps", "7", "--seed", "42"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(data_lines(a.out).size(), 8u);

  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "4"});
  EXPECT_EQ(run(threaded).out, a.out);
  auto event = args;
  event.insert(event.end(), {"--engine", "event"});
  EXPECT_NE(run(event).out, a.out);
}

TEST_F(SeedEnv, HeaderEchoReparses) {
  const auto r = run({"simulate", "--graph", "bipartite:2:6", "--lambda", "0.5", "--gamma", "3", "--reps", "3",
                      "--seed", "9"});
  ASSERT_EQ(r.code, 0);
  const auto cfg = ExperimentConfig::from_header(r.out);
  EXPECT_EQ(cfg.text("graph"), "bipartite:2:6");
  EXPECT_EQ(cfg.count("seed"), 9u);
  EXPECT_EQ(cfg.text("engine"), "leap");
  EXPECT_EQ(ExperimentConfig::parse(cfg.echo()), cfg);

  // Feeding the echo back as a config file reproduces the output exactly.
  const auto path = std::filesystem::temp_directory_path() / "eoe_cli_test_config.txt";
  std::ofstream(path) << cfg.echo();
  const auto again = run({"simulate", "--config", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(again.out, r.out);
}

TEST_F(SeedEnv, SimulateJsonSummary) {
  const auto r = run({"simulate", "--graph", "ring:5", "--lambda", "1", "--gamma", "1", "--reps", "200", "--seed",
                      "1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["header"]["command"], "simulate");
  EXPECT_EQ(j["header"]["config"]["s_grid"], "0.5,1,2");
  EXPECT_EQ(j["summary"]["count"], 200);
  EXPECT_EQ(j["summary"]["transform"].size(), 3u);
}

TEST_F(SeedEnv, BadInputExitsTwoNamingTheKey) {
  auto r = run({"simulate", "--graph", "complete:3", "--lambda", "-1", "--gamma", "1", "--reps", "5", "--seed", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'lambda'"), std::string::npos) << r.err;

  r = run({"simulate", "--graph", "complete:3", "--lambda", "1", "--gamma", "1", "--reps", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'seed'"), std::string::npos);

  r = run({"transform", "--graph", "ring:6", "--s-grid", "1", "--reps", "4"});
  EXPECT_EQ(r.code, 2);

  const auto path = std::filesystem::temp_directory_path() / "eoe_cli_test_bad.txt";
  std::ofstream(path) << "graph = ring:6\ncolour = blue\n";
  r = run({"transform", "--config", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'colour'"), std::string::npos);

  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(SeedEnv, SeedFromEnvironment) {
  const std::vector<std::string> args = {"simulate", "--graph", "ring:4", "--lambda", "1", "--gamma", "1", "--reps", "3"};
  setenv("EOE_SEED", "42", 1);
  const auto from_env = run(args);
  ASSERT_EQ(from_env.code, 0) << from_env.err;
  auto explicit_seed = args;
  explicit_seed.insert(explicit_seed.end(), {"--seed", "42"});
  EXPECT_EQ(run(explicit_seed).out, from_env.out);
  setenv("EOE_SEED", "x", 1);
  EXPECT_EQ(run(args).code, 2);
}

TEST_F(SeedEnv, SweepJson) {
  const auto r = run({"sweep", "--schedule", "star", "--n-grid", "50,100", "--reps", "100", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schedule"]["name"], "star");
  EXPECT_EQ(j["convergence"]["points"].size(), 2u);
  EXPECT_EQ(j["convergence"]["points"][0]["metric"], "ks");

  const auto bad = run({"sweep", "--schedule", "complete-i", "--n-grid", "5,10", "--reps", "10", "--seed", "3"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("regime"), std::string::npos) << bad.err;
}

TEST_F(SeedEnv, VerifyQuickPasses) {
  const auto r = run({"verify", "--quick"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, HelpAndVersion) {
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("simulate"), std::string::npos);
  const auto version = run({"--version"});
  EXPECT_EQ(version.code, 0);
  EXPECT_NE(version.out.find("0.1.0"), std::string::npos);
}

TEST_F(SeedEnv, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "eoe_cli_test_out.csv";
  const auto r = run({"transform", "--graph", "complete:4", "--subject", "N", "--s-grid", "1", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  std::filesystem::remove(path);
  EXPECT_EQ(data_lines(text.str()).size(), 2u);
}

}  // namespace
}  // namespace eoe::cli
