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


#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "lyap/experiments.hpp"

namespace lyap::experiments {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

SolverOptions parse_solver(const json& j) {
  if (!j.is_object()) throw ConfigError("solver must be an object");
  reject_unknown(j, {"grid_N", "max_iter", "tol", "restarts", "p_scan", "refine"}, "solver");
  SolverOptions o;
  o.grid_N = get_or<std::size_t>(j, "grid_N", o.grid_N);
  o.max_iter = get_or<int>(j, "max_iter", o.max_iter);
  o.tol = get_or<double>(j, "tol", o.tol);
  o.restarts = get_or<bool>(j, "restarts", o.restarts);
  o.p_scan = get_or<std::vector<double>>(j, "p_scan", o.p_scan);
  o.refine = get_or<bool>(j, "refine", o.refine);
  if (o.grid_N < 8) throw ConfigError("solver.grid_N must be >= 8");
  if (o.max_iter < 0) throw ConfigError("solver.max_iter must be >= 0");
  return o;
}

McConfig parse_mc(const json& j) {
  if (!j.is_object()) throw ConfigError("mc must be an object");
  reject_unknown(j, {"dt", "n_paths", "t_max", "direction", "u_grid",
                     "keep_truncated_weight", "workers", "log_prefactor"},
                 "mc");
  McConfig c;
  c.dt = get_or<double>(j, "dt", c.dt);
  c.n_paths = get_or<std::size_t>(j, "n_paths", c.n_paths);
  c.t_max = get_or<double>(j, "t_max", c.t_max);
  if (j.contains("direction")) {
    const auto d = get_or<std::vector<double>>(j, "direction", {});
    if (d.empty() || d.size() > 2) throw ConfigError("mc.direction needs 1 or 2 entries");
    c.direction = {d[0], d.size() > 1 ? d[1] : 0.0};
  }
  c.u_grid = get_or<std::vector<double>>(j, "u_grid", c.u_grid);
  c.keep_truncated_weight = get_or<bool>(j, "keep_truncated_weight", c.keep_truncated_weight);
  c.workers = get_or<unsigned>(j, "workers", c.workers);
  c.log_prefactor = get_or<bool>(j, "log_prefactor", c.log_prefactor);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("mc: ") + e.what());
  }
  return c;
}

}  // namespace

TorusPotential parse_potential(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError("potential needs a 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "constant") {
      reject_unknown(j, {"kind", "c"}, "constant potential");
      if (!j.contains("c")) throw ConfigError("constant potential needs 'c'");
      return TorusPotential::constant(j.at("c").get<double>());
    }
    if (kind == "trig") {
      reject_unknown(j, {"kind", "a0", "cos", "sin"}, "trig potential");
      return TorusPotential::trig(get_or<double>(j, "a0", 0.0),
                                  get_or<std::vector<double>>(j, "cos", {}),
                                  get_or<std::vector<double>>(j, "sin", {}));
    }
    if (kind == "grid") {
      reject_unknown(j, {"kind", "samples", "v_min", "v_max"}, "grid potential");
      auto samples = get_or<std::vector<double>>(j, "samples", {});
      if (j.contains("v_min") || j.contains("v_max")) {
        if (!j.contains("v_min") || !j.contains("v_max")) {
          throw ConfigError("grid potential needs both v_min and v_max");
        }
        return TorusPotential::grid(std::move(samples), j.at("v_min").get<double>(),
                                    j.at("v_max").get<double>());
      }
      return TorusPotential::grid(std::move(samples));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid potential: ") + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid potential: ") + e.what());
  }
  throw ConfigError("unknown potential kind '" + kind + "'");
}

json potential_to_json(const TorusPotential& v) {
  switch (v.kind()) {
    case PotentialKind::kConstant:
      return {{"kind", "constant"}, {"c", v.series().a0}};
    case PotentialKind::kTrig:
      return {{"kind", "trig"},
              {"a0", v.series().a0},
              {"cos", v.series().cos_coeffs},
              {"sin", v.series().sin_coeffs}};
    case PotentialKind::kGrid: {
      const auto s = v.samples();
      return {{"kind", "grid"},
              {"samples", std::vector<double>(s.begin(), s.end())},
              {"v_min", v.v_min()},
              {"v_max", v.v_max()}};
    }
  }
  return {};
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"name", "scenario", "potential", "potentials", "solver", "mc",
                     "output_dir", "seed", "params"},
                 "config");
  ExperimentConfig cfg;
  if (!j.contains("scenario")) throw ConfigError("config needs a 'scenario'");
  cfg.scenario = get_or<std::string>(j, "scenario", "");
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), cfg.scenario) == names.end()) {
    throw ConfigError("unknown scenario '" + cfg.scenario + "'");
  }
  cfg.name = get_or<std::string>(j, "name", cfg.scenario);
  if (j.contains("potential") && j.contains("potentials")) {
    throw ConfigError("give either 'potential' or 'potentials'");
  }
  if (j.contains("potential")) cfg.potentials.push_back(parse_potential(j.at("potential")));
  if (j.contains("potentials")) {
    if (!j.at("potentials").is_array()) throw ConfigError("'potentials' must be an array");
    for (const auto& p : j.at("potentials")) cfg.potentials.push_back(parse_potential(p));
  }
  if (j.contains("solver")) cfg.solver = parse_solver(j.at("solver"));
  if (j.contains("mc")) cfg.mc = parse_mc(j.at("mc"));
  cfg.output_dir = get_or<std::string>(j, "output_dir", cfg.output_dir.string());
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  cfg.mc.seed = cfg.seed;
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw ConfigError("'params' must be an object");
    cfg.params = j.at("params");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace lyap::experiments
