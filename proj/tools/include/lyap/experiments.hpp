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


#ifndef LYAP_EXPERIMENTS_HPP_
#define LYAP_EXPERIMENTS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lyap/mc.hpp"
#include "lyap/potential.hpp"
#include "lyap/varform.hpp"

namespace lyap::experiments {

/// Malformed or incomplete experiment configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string name;
  std::string scenario;
  std::vector<TorusPotential> potentials;
  SolverOptions solver;
  McConfig mc;
  std::filesystem::path output_dir = "lyaplab-out";
  std::uint64_t seed = 1;
  /// Scenario-specific knobs; unknown keys are rejected per scenario.
  nlohmann::json params = nlohmann::json::object();
};

TorusPotential parse_potential(const nlohmann::json& j);
nlohmann::json potential_to_json(const TorusPotential& v);
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& file);

/// One line of a verdict: the measured value is compared against the target
/// with `relation` ("<=", ">=", "<", "abs<=") and tolerance.
struct Check {
  std::string check_id;
  std::string name;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string relation;
  bool pass = false;
};

Check check_le(std::string id, std::string name, double measured, double bound,
               double tol);
Check check_ge(std::string id, std::string name, double measured, double bound,
               double tol);
Check check_lt(std::string id, std::string name, double measured, double bound);
Check check_near(std::string id, std::string name, double measured, double target,
                 double tol);

struct Table {
  std::string file;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct ScenarioResult {
  std::string scenario;
  std::vector<Check> checks;
  std::vector<Table> tables;
  std::vector<nlohmann::json> gamma_results;

  bool all_pass() const noexcept;
};

const std::vector<std::string>& scenario_names();

/// Runs the scenario named in the config. Throws ConfigError for unknown
/// scenarios or bad parameters.
ScenarioResult run(const ExperimentConfig& cfg);

/// Writes tables, verdicts.csv, verdicts.json and gamma_results.jsonl into
/// dir; every file is written to a temporary name and renamed into place.
void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir);

/// Shortest round-trip decimal form, independent of locale.
std::string format_number(double x);

nlohmann::json to_json(const VariationalResult& r);

/// The five-potential corpus: constant, 2+cos, a two-mode potential, a
/// random 8-mode potential with v_min >= 0.5 and a grid potential.
std::vector<TorusPotential> default_corpus();

// Building blocks shared by scenarios and the acceptance gate.

struct SandwichRow {
  double n = 0.0;
  double lower = 0.0;   // Gamma_V^2 y^2-scaled
  double middle = 0.0;  // n (Gamma^2_{c+V/n} - Gamma^2_c)
  double upper = 0.0;   // 2 E[V] y^2
};

std::vector<SandwichRow> scaling_sandwich(const TorusPotential& v, double c,
                                          const std::vector<double>& ns, double y,
                                          const SolverOptions& opts);

struct DiscontinuityRow {
  double kappa = 0.0;
  double M = 0.0;
  int realization = 0;
  double slope = 0.0;
  double stderr_slope = 0.0;
  double lines = 0.0;
};

struct DiscontinuityParams {
  std::vector<double> kappas{0.0, 0.5};
  double c = 1.0;
  double M = 1.0;
  double D = 0.0;  // 0 means (2 - sqrt 2) / 2
  std::optional<double> R;  // defaults to r0_for(D)
  int realizations = 2;
};

std::vector<DiscontinuityRow> discontinuity_demo(const DiscontinuityParams& p,
                                                 const McConfig& mc);

std::vector<Check> props_suite(const std::vector<TorusPotential>& corpus,
                               const SolverOptions& opts, double tau,
                               std::uint64_t seed);

}  // namespace lyap::experiments

#endif  // LYAP_EXPERIMENTS_HPP_
