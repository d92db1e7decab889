#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcomp/cli.hpp"

using namespace dcomp;
using namespace dcomp::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("dcomp_cli_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

// Small enough to finish in seconds.
std::vector<std::string> small(const std::filesystem::path& out) {
  return {"window_side=400", "drops=100", "realizations=4", "output_dir=" + out.string()};
}

}  // namespace

TEST(ParseConfig, EmptyGivesDefaults) {
  unsetenv("DCOMP_OUTPUT_DIR");
  const auto s = parse_config(std::nullopt);
  EXPECT_EQ(s.params.lambda, 0.02);
  EXPECT_EQ(s.params.alpha, 4.0);
  EXPECT_EQ(s.window_side, 1e4);
  EXPECT_EQ(s.seed, 42u);
  EXPECT_EQ(s.output_dir, "out");
  const auto e = echo(s);
  for (const char* k : {"lambda = 0.02  (default)", "alpha = 4  (default)", "window_side = 10000  (default)",
                        "seed = 42  (default)", "omega = auto  (default)"})
    EXPECT_NE(e.find(k), std::string::npos) << k;
  EXPECT_EQ(e.find("override"), std::string::npos);
}

TEST(ParseConfig, OverrideIsEchoedAndApplied) {
  const auto s = parse_config(std::nullopt, {"alpha=3.5"});
  EXPECT_EQ(s.params.alpha, 3.5);
  EXPECT_EQ(s.sim(SchemeId::JT, 1).params.alpha, 3.5);
  EXPECT_NE(echo(s).find("alpha = 3.5  (override)"), std::string::npos);
}

TEST(ParseConfig, RejectsAlphaTwo) {
  try {
    parse_config(std::nullopt, {"alpha=2.0"});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "alpha");
    EXPECT_NE(std::string(e.what()).find("path-loss exponent must exceed 2"), std::string::npos);
  }
}

TEST(ParseConfig, UnknownKeyAndBadType) {
  try {
    parse_config(std::nullopt, {"lamda=0.01"});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "lamda");
  }
  try {
    parse_config(std::nullopt, {"drops=many"});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "drops");
  }
  EXPECT_THROW(parse_config(std::nullopt, {"antennas=1.5"}), ConfigError);
  EXPECT_THROW(parse_config(std::nullopt, {"figure=fig12"}), ConfigError);
  EXPECT_THROW(parse_config(std::nullopt, {"interference_mode=Eq18"}), ConfigError);
}

TEST(ParseConfig, FileThenFlags) {
  const auto path = std::filesystem::temp_directory_path() / "dcomp_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "# comment\n\nlambda = 0.01\nseed=7  # trailing\nantennas=2\n";
  }
  const auto s = parse_config(path.string(), {"antennas=3"});
  EXPECT_EQ(s.params.lambda, 0.01);
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(s.params.antennas, 3);
  const auto e = echo(s);
  EXPECT_NE(e.find("lambda = 0.01  (config file)"), std::string::npos);
  EXPECT_NE(e.find("antennas = 3  (override)"), std::string::npos);
  EXPECT_THROW(parse_config(std::string("/nonexistent/dcomp.cfg")), ConfigError);
}

TEST(ParseConfig, OutputDirFromEnvironment) {
  setenv("DCOMP_OUTPUT_DIR", "/tmp/dcomp_env_out", 1);
  const auto s = parse_config(std::nullopt);
  unsetenv("DCOMP_OUTPUT_DIR");
  EXPECT_EQ(s.output_dir, "/tmp/dcomp_env_out");
  EXPECT_NE(echo(s).find("output_dir = /tmp/dcomp_env_out  (env)"), std::string::npos);
  EXPECT_EQ(parse_config(std::nullopt, {"output_dir=x"}).output_dir, "x");
}

TEST(RunExperiment, Fig6ThreeSeriesOnDefaultGrid) {
  const auto dir = scratch_dir("fig6");
  auto o = small(dir);
  o.push_back("figure=fig6");
  const auto out = run_experiment(parse_config(std::nullopt, o));
  ASSERT_EQ(out.files.size(), 3u);
  for (const auto& f : out.files) {
    const auto lines = data_lines(f);
    ASSERT_EQ(lines.size(), 32u) << f;
    EXPECT_EQ(lines[0], "gamma_db,analytic,mc_mean,mc_ci_lo,mc_ci_hi");
    EXPECT_EQ(lines[1].substr(0, 4), "-10,");
    EXPECT_EQ(lines[31].substr(0, 3), "20,");
    const auto text = slurp(f);
    EXPECT_NE(text.find("# seed=42"), std::string::npos);
    EXPECT_NE(text.find("master_seed=42"), std::string::npos);
    EXPECT_NE(text.find("# gamma_lin = 10^(gamma_db/10)"), std::string::npos);
  }
}

TEST(RunExperiment, ByteIdenticalAcrossRuns) {
  const auto dir = scratch_dir("repeat");
  auto o = small(dir);
  o.push_back("figure=fig6");
  o.push_back("gamma_points=7");
  const auto spec = parse_config(std::nullopt, o);
  const auto a = run_experiment(spec);
  std::vector<std::string> first;
  for (const auto& f : a.files) first.push_back(slurp(f));
  auto spec4 = spec;
  spec4.workers = 4;
  const auto b = run_experiment(spec4);
  for (std::size_t i = 0; i < b.files.size(); ++i) EXPECT_EQ(slurp(b.files[i]), first[i]);
  const auto c = run_experiment(spec);
  for (std::size_t i = 0; i < c.files.size(); ++i) EXPECT_EQ(slurp(c.files[i]), first[i]);
}

TEST(RunExperiment, HeadlineSummaryHasTargets) {
  const auto dir = scratch_dir("headline");
  auto o = small(dir);
  o.push_back("figure=headline-se");
  const auto out = run_experiment(parse_config(std::nullopt, o));
  for (const char* t : {"JT 2.24", "OPS 1.03", "RPS 0.27"}) EXPECT_NE(out.summary.find(t), std::string::npos) << t;
  ASSERT_EQ(out.files.size(), 1u);
  const auto lines = data_lines(out.files[0]);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "M,scheme,exact,approx,mc_mean,mc_ci_lo,mc_ci_hi");
  EXPECT_EQ(lines[1].substr(0, 6), "1,JT,2");
}

TEST(RunExperiment, Fig7LevySeriesOnSharedBins) {
  const auto dir = scratch_dir("fig7");
  auto o = small(dir);
  o.push_back("figure=fig7");
  o.push_back("bins=40");
  const auto out = run_experiment(parse_config(std::nullopt, o));
  ASSERT_EQ(out.files.size(), 2u);
  const auto a = data_lines(out.files[0]), b = data_lines(out.files[1]);
  ASSERT_EQ(a.size(), 41u);
  ASSERT_EQ(b.size(), 41u);
  EXPECT_EQ(a[0], "bin_center,density_mc,density_analytic");
  for (std::size_t i = 1; i < a.size(); ++i) {
    EXPECT_EQ(a[i].substr(0, a[i].find(',')), b[i].substr(0, b[i].find(',')));
    EXPECT_NE(a[i].back(), ',');  // Levy density present
    EXPECT_EQ(b[i].back(), ',');  // no analytic law at a Type I point
  }
  EXPECT_NE(out.summary.find("excess kurtosis"), std::string::npos);
}

TEST(RunExperiment, Fig9TableCoversAllAntennaCounts) {
  const auto dir = scratch_dir("fig9");
  auto o = small(dir);
  o.push_back("figure=fig9");
  o.push_back("max_antennas=2");
  const auto out = run_experiment(parse_config(std::nullopt, o));
  const auto lines = data_lines(out.files[0]);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[4].substr(0, 5), "2,JT,");
  EXPECT_EQ(lines[6].substr(0, 6), "2,RPS,");
}
