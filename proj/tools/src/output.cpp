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
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "lyap/experiments.hpp"

namespace lyap::experiments {

namespace {

void write_atomically(const std::filesystem::path& target, const std::string& content) {
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

Check make(std::string id, std::string name, double measured, double target,
           double tol, std::string rel, bool pass) {
  Check c;
  c.check_id = std::move(id);
  c.name = std::move(name);
  c.measured = measured;
  c.target = target;
  c.tolerance = tol;
  c.relation = std::move(rel);
  c.pass = pass;
  return c;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

Check check_le(std::string id, std::string name, double measured, double bound, double tol) {
  return make(std::move(id), std::move(name), measured, bound, tol, "<=",
              measured <= bound + tol);
}

Check check_ge(std::string id, std::string name, double measured, double bound, double tol) {
  return make(std::move(id), std::move(name), measured, bound, tol, ">=",
              measured >= bound - tol);
}

Check check_lt(std::string id, std::string name, double measured, double bound) {
  return make(std::move(id), std::move(name), measured, bound, 0.0, "<", measured < bound);
}

Check check_near(std::string id, std::string name, double measured, double target,
                 double tol) {
  return make(std::move(id), std::move(name), measured, target, tol, "abs<=",
              std::abs(measured - target) <= tol);
}

bool ScenarioResult::all_pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const VariationalResult& r) {
  nlohmann::json j;
  j["gamma"] = r.gamma;
  j["K_value"] = r.K_value;
  j["B_value"] = r.B_value;
  j["sigma_s0"] = r.sigma_s0;
  const auto vals = r.minimizer.values();
  j["minimizer"] = {{"values", std::vector<double>(vals.begin(), vals.end())},
                    {"c_f", r.minimizer.floor()}};
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["grid_N"] = r.grid_N;
  j["y"] = r.y;
  j["gamma_refined"] = r.gamma_refined ? nlohmann::json(*r.gamma_refined) : nlohmann::json();
  j["restart_p"] = r.restart_p ? nlohmann::json(*r.restart_p) : nlohmann::json();
  return j;
}

void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& t : r.tables) {
    std::string s;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (i) s += ',';
      s += t.header[i];
    }
    s += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ',';
        s += format_number(row[i]);
      }
      s += '\n';
    }
    write_atomically(dir / t.file, s);
  }

  std::string csv = "check_id,name,measured,relation,target,tolerance,pass\n";
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : r.checks) {
    csv += c.check_id + ',' + csv_field(c.name) + ',' + format_number(c.measured) + ',' + c.relation +
           ',' + format_number(c.target) + ',' + format_number(c.tolerance) + ',' +
           (c.pass ? "true" : "false") + '\n';
    arr.push_back({{"check_id", c.check_id},
                   {"name", c.name},
                   {"measured", c.measured},
                   {"relation", c.relation},
                   {"target", c.target},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  write_atomically(dir / "verdicts.csv", csv);
  nlohmann::json doc = {{"scenario", r.scenario}, {"pass", r.all_pass()}, {"checks", arr}};
  write_atomically(dir / "verdicts.json", doc.dump(2) + "\n");

  if (!r.gamma_results.empty()) {
    std::string lines;
    for (const auto& g : r.gamma_results) lines += g.dump() + '\n';
    write_atomically(dir / "gamma_results.jsonl", lines);
  }
}

}  // namespace lyap::experiments
