// Copyright 2026 The lyaplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "lyap/experiments.hpp"

namespace {

namespace ex = lyap::experiments;
using nlohmann::json;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Config, MinimalConfigParses) {
  const auto cfg = ex::parse_config(json::parse(R"({"scenario": "const-check"})"));
  EXPECT_EQ(cfg.scenario, "const-check");
  EXPECT_TRUE(cfg.potentials.empty());
}

TEST(Config, SeedPropagatesToMonteCarlo) {
  const auto cfg = ex::parse_config(json::parse(R"({"scenario": "mc-cross-check", "seed": 42})"));
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.mc.seed, 42u);
}

TEST(Config, RejectsMissingOrUnknownScenario) {
  EXPECT_THROW(ex::parse_config(json::object()), ex::ConfigError);
  EXPECT_THROW(ex::parse_config(json::parse(R"({"scenario": "nope"})")), ex::ConfigError);
}

TEST(Config, RejectsUnknownKeys) {
  EXPECT_THROW(ex::parse_config(json::parse(R"({"scenario": "const-check", "sovler": {}})")),
               ex::ConfigError);
  EXPECT_THROW(ex::parse_config(json::parse(R"({"scenario": "const-check", "mc": {"dtt": 1}})")),
               ex::ConfigError);
  EXPECT_THROW(ex::parse_config(json::parse(
                   R"({"scenario": "const-check", "potential": {"kind": "constant", "c": 1, "x": 2}})")),
               ex::ConfigError);
}

TEST(Config, RejectsInvalidValues) {
  EXPECT_THROW(ex::parse_config(json::parse(R"({"scenario": "const-check", "mc": {"dt": -1}})")),
               ex::ConfigError);
  EXPECT_THROW(ex::parse_config(json::parse(
                   R"({"scenario": "const-check", "potential": {"kind": "trig", "a0": 0.5, "cos": [1]}})")),
               ex::ConfigError);
  EXPECT_THROW(ex::parse_config(json::parse(R"({"scenario": "const-check", "solver": {"grid_N": 4}})")),
               ex::ConfigError);
}

TEST(Config, PotentialRoundTrip) {
  const auto v = lyap::TorusPotential::trig(2.0, {0.5, 0.1}, {0.0, 0.2});
  const auto back = ex::parse_potential(ex::potential_to_json(v));
  for (double x : {0.0, 0.1, 0.37, 0.9}) EXPECT_DOUBLE_EQ(back(x), v(x));
  const auto g = lyap::TorusPotential::grid({1.0, 2.0, 3.0, 2.0});
  const auto gb = ex::parse_potential(ex::potential_to_json(g));
  EXPECT_DOUBLE_EQ(gb(0.25), 2.0);
}

TEST(Config, UnknownScenarioParamsRejected) {
  auto cfg = ex::parse_config(json::parse(R"({"scenario": "const-check", "params": {"bogus": 1}})"));
  EXPECT_THROW(ex::run(cfg), ex::ConfigError);
}

TEST(Output, FormatNumberRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 2.0, -7.25e12}) {
    EXPECT_EQ(std::stod(ex::format_number(x)), x);
  }
  EXPECT_EQ(ex::format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(ex::format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Output, ChecksEvaluateRelations) {
  EXPECT_TRUE(ex::check_le("a", "b", 1.0, 1.0, 0.0).pass);
  EXPECT_FALSE(ex::check_le("a", "b", 1.1, 1.0, 0.05).pass);
  EXPECT_TRUE(ex::check_ge("a", "b", 0.96, 1.0, 0.05).pass);
  EXPECT_FALSE(ex::check_lt("a", "b", 1.0, 1.0).pass);
  EXPECT_TRUE(ex::check_near("a", "b", 1.04, 1.0, 0.05).pass);
  EXPECT_FALSE(ex::check_near("a", "b", std::nan(""), 1.0, 0.05).pass);
}

TEST(Output, WritesTablesAndVerdicts) {
  const auto dir = std::filesystem::temp_directory_path() / "lyap_tools_test_out";
  std::filesystem::remove_all(dir);
  ex::ScenarioResult r;
  r.scenario = "demo";
  r.checks.push_back(ex::check_le("x.y", "name, with comma", 1.0, 2.0, 0.0));
  r.tables.push_back({"t.csv", {"a", "b"}, {{1.0, 0.5}}});
  ex::write_outputs(r, dir);
  EXPECT_EQ(slurp(dir / "t.csv"), "a,b\n1,0.5\n");
  const auto verdicts = slurp(dir / "verdicts.csv");
  EXPECT_NE(verdicts.find("\"name, with comma\""), std::string::npos);
  const auto j = json::parse(slurp(dir / "verdicts.json"));
  EXPECT_TRUE(j.at("pass").get<bool>());
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    EXPECT_NE(e.path().extension(), ".tmp");
  }
  std::filesystem::remove_all(dir);
}

TEST(Scenarios, ConstCheckPassesAndRecordsGamma) {
  auto cfg = ex::parse_config(json::parse(
      R"({"scenario": "const-check", "potentials": [{"kind": "constant", "c": 2}]})"));
  const auto r = ex::run(cfg);
  ASSERT_TRUE(r.all_pass());
  ASSERT_EQ(r.gamma_results.size(), 1u);
  EXPECT_NEAR(r.gamma_results[0].at("gamma").get<double>(), 2.0, 1e-3);
  for (const char* key : {"K_value", "B_value", "sigma_s0", "minimizer", "converged", "grid_N"}) {
    EXPECT_TRUE(r.gamma_results[0].contains(key)) << key;
  }
}

TEST(Scenarios, ScalingSandwichOrdered) {
  lyap::SolverOptions o;
  o.refine = false;
  const auto rows = ex::scaling_sandwich(lyap::TorusPotential::trig(2.0, {1.0}, {}), 1.0,
                                         {1.0, 10.0, 100.0}, 1.0, o);
  for (const auto& row : rows) {
    EXPECT_LE(row.lower, row.middle + 1e-6);
    EXPECT_LE(row.middle, row.upper + 1e-6);
  }
  EXPECT_GT(rows[2].middle, rows[0].middle);
}

TEST(Scenarios, ThinningCheckDeterministic) {
  auto cfg = ex::parse_config(json::parse(
      R"({"scenario": "thinning-check", "seed": 3, "params": {"samples": 2000, "count_samples": 200}})"));
  const auto a = ex::run(cfg);
  const auto b = ex::run(cfg);
  ASSERT_EQ(a.tables.size(), b.tables.size());
  EXPECT_EQ(a.tables[0].rows, b.tables[0].rows);
}

TEST(Scenarios, NamesIncludeEveryConfiguredScenario) {
  const auto& names = ex::scenario_names();
  for (const char* s : {"props-suite", "const-check", "strict-inequality", "scaling-rate",
                        "l1-continuity", "mc-cross-check", "stripe-lemma", "cheap-path-demo",
                        "thinning-check", "untypical-scaling"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), s), names.end()) << s;
  }
}

}  // namespace
