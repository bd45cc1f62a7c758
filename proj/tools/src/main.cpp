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


#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lyap/experiments.hpp"

namespace ex = lyap::experiments;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

void report(const ex::ScenarioResult& r, std::ostream& os) {
  for (const auto& c : r.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.check_id << "  " << c.name << "  measured="
       << ex::format_number(c.measured) << ' ' << c.relation << ' '
       << ex::format_number(c.target) << " tol=" << ex::format_number(c.tolerance) << '\n';
  }
  std::size_t passed = 0;
  for (const auto& c : r.checks) passed += c.pass;
  os << r.scenario << ": " << passed << '/' << r.checks.size() << " checks passed\n";
}

int execute(ex::ExperimentConfig cfg, const std::optional<std::uint64_t>& seed,
            const std::string& out_flag) {
  if (seed) {
    cfg.seed = *seed;
    cfg.mc.seed = *seed;
  }
  if (const char* env = std::getenv("LYAPLAB_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
  if (!out_flag.empty()) cfg.output_dir = out_flag;
  const auto result = ex::run(cfg);
  ex::write_outputs(result, cfg.output_dir);
  report(result, std::cout);
  return result.all_pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lyaplab: Lyapunov exponent experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--output-dir", out_dir, "override the output directory");

  auto* run_cmd = app.add_subcommand("run", "run a scenario from a JSON config");
  std::string config_path;
  run_cmd->add_option("config", config_path, "config file")->required();

  auto* props_cmd = app.add_subcommand("props-suite", "variational property checks");
  std::string corpus = "default";
  props_cmd->add_option("--corpus", corpus, "potential corpus")->check(CLI::IsMember({"default"}));

  auto* list_cmd = app.add_subcommand("list-scenarios", "print scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*list_cmd) {
      for (const auto& n : ex::scenario_names()) std::cout << n << '\n';
      return kExitPass;
    }
    if (*props_cmd) {
      ex::ExperimentConfig cfg;
      cfg.name = "props-suite";
      cfg.scenario = "props-suite";
      cfg.solver.refine = false;
      cfg.potentials = ex::default_corpus();
      return execute(std::move(cfg), seed, out_dir);
    }
    return execute(ex::load_config(config_path), seed, out_dir);
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}
