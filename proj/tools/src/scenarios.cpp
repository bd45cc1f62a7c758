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
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "lyap/experiments.hpp"
#include "lyap/field.hpp"
#include "lyap/line_process.hpp"
#include "lyap/rng.hpp"
#include "lyap/stats.hpp"

namespace lyap::experiments {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

// Typed access to the scenario's "params" object with unknown-key checks.
class Params {
 public:
  Params(const json& j, std::set<std::string> allowed) : j_(j) {
    for (const auto& [key, _] : j.items()) {
      if (!allowed.count(key)) throw ConfigError("unknown params key '" + key + "'");
    }
  }
  template <class T>
  T get(const char* key, T fallback) const {
    if (!j_.contains(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad params value for '") + key + "': " + e.what());
    }
  }
  bool has(const char* key) const { return j_.contains(key); }

 private:
  const json& j_;
};

std::string idx_name(const std::string& base, std::size_t i) {
  return base + "[V" + std::to_string(i) + "]";
}

std::string num(double x) { return format_number(x); }

TorusPotential first_potential(const ExperimentConfig& cfg, TorusPotential fallback) {
  return cfg.potentials.empty() ? std::move(fallback) : cfg.potentials.front();
}

TorusPotential cosine_potential() { return TorusPotential::trig(2.0, {1.0}, {}); }

Table estimates_table(const std::string& file, const std::vector<TravelCostEstimate>& t) {
  Table out{file, {"u", "a_hat", "stderr_a", "n_effective", "truncated_fraction"}, {}};
  for (const auto& e : t) {
    out.rows.push_back({e.u, e.a_hat, e.stderr_a, static_cast<double>(e.n_effective),
                        e.truncated_fraction});
  }
  return out;
}

// ---------------------------------------------------------------------------

ScenarioResult run_props_suite(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"tau"});
  ScenarioResult r;
  const auto corpus = cfg.potentials.empty() ? default_corpus() : cfg.potentials;
  r.checks = props_suite(corpus, cfg.solver, p.get<double>("tau", 1e-3), cfg.seed);
  return r;
}

ScenarioResult run_const_check(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"c", "y", "tolerance"});
  std::vector<double> cs;
  if (p.has("c")) {
    cs = cfg.params.at("c").is_array() ? p.get<std::vector<double>>("c", {})
                                       : std::vector<double>{p.get<double>("c", 2.0)};
  } else {
    for (const auto& v : cfg.potentials) {
      if (!v.is_constant()) throw ConfigError("const-check needs constant potentials");
      cs.push_back(v.mean());
    }
  }
  if (cs.empty()) cs = {2.0};
  const double y = p.get<double>("y", 1.0);
  const double tol = p.get<double>("tolerance", 1e-3);
  ScenarioResult r;
  Table t{"const_check.csv", {"c", "y", "gamma", "exact", "rel_error"}, {}};
  for (double c : cs) {
    const auto res = variational_exponent(TorusPotential::constant(c), y, cfg.solver);
    const double exact = std::sqrt(2.0 * c) * std::abs(y);
    const double rel = exact > 0 ? std::abs(res.gamma - exact) / exact : std::abs(res.gamma);
    t.rows.push_back({c, y, res.gamma, exact, rel});
    r.checks.push_back(check_near("varform.constant-formula", "gamma(c=" + num(c) + ")",
                                  res.gamma, exact, tol * std::max(exact, 1.0)));
    r.gamma_results.push_back(to_json(res));
  }
  r.tables.push_back(std::move(t));
  return r;
}

ScenarioResult run_strict_inequality(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"y", "p_max", "p_steps", "fd_h", "tau", "margin_factor",
                              "fd_tolerance"});
  const auto v = first_potential(cfg, cosine_potential());
  const double y = p.get<double>("y", 1.0);
  const double p_max = p.get<double>("p_max", 1.0);
  const int steps = p.get<int>("p_steps", 200);
  const double h = p.get<double>("fd_h", 1e-4);
  const double tau = p.get<double>("tau", 1e-3);
  const double margin = p.get<double>("margin_factor", 10.0);
  const double fd_tol = p.get<double>("fd_tolerance", 0.01);
  if (v.is_constant() || !(v.v_min() > 0.0)) {
    throw ConfigError("strict-inequality needs a nonconstant potential with v_min > 0");
  }

  ScenarioResult r;
  const auto res = variational_exponent(v, y, cfg.solver);
  r.gamma_results.push_back(to_json(res));
  const double upper = std::sqrt(2.0 * v.mean()) * std::abs(y);

  Table scan{"fp_scan.csv", {"p", "gamma_upper_fp"}, {}};
  double best = upper;
  for (int i = 0; i <= steps; ++i) {
    const double pp = p_max * i / steps;
    const double b = power_family_bound(v, y, pp);
    best = std::min(best, b);
    scan.rows.push_back({pp, b});
  }
  r.tables.push_back(std::move(scan));

  const double cov = cov_v_log_v(v);
  const double b0 = power_family_bound(v, 1.0, 0.0);
  const double bh = power_family_bound(v, 1.0, h);
  const double slope = (bh * bh - b0 * b0) / (2.0 * h);  // d/dp of Gamma_p^2 / 2

  r.checks.push_back(check_lt("varform.strict-inequality", "gamma < sqrt(2E[V])|y| - margin",
                              res.gamma, upper - margin * tau));
  r.checks.push_back(check_le("varform.strict-inequality", "gamma <= min_p f_p bound",
                              res.gamma, best, 1e-9));
  r.checks.push_back(check_ge("varform.fp-gap", "f_p gap above margin", upper - best,
                              margin * tau, 0.0));
  r.checks.push_back(check_near("varform.cov-derivative", "f_p derivative at 0 vs -Cov",
                                slope, -cov, fd_tol * cov));
  r.checks.push_back(check_ge("varform.cov-positive", "Cov(V ln V) > 0", cov, 0.0, 0.0));
  Table summary{"strict_inequality.csv",
                {"gamma", "gamma_refined", "upper", "min_fp", "cov", "fd_slope"},
                {{res.gamma, res.gamma_refined.value_or(res.gamma), upper, best, cov, slope}}};
  r.tables.push_back(std::move(summary));
  return r;
}

ScenarioResult run_scaling_rate(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"c", "n", "y", "tau", "limit_tolerance"});
  const auto v = first_potential(cfg, cosine_potential());
  const double c = p.get<double>("c", 1.0);
  const auto ns = p.get<std::vector<double>>("n", {1.0, 10.0, 100.0, 1000.0});
  const double y = p.get<double>("y", 1.0);
  const double tau = p.get<double>("tau", 1e-3);
  const double lim_tol = p.get<double>("limit_tolerance", 0.03);
  if (ns.empty()) throw ConfigError("scaling-rate needs a nonempty n list");

  ScenarioResult r;
  const auto rows = scaling_sandwich(v, c, ns, y, cfg.solver);
  Table t{"scaling_sandwich.csv", {"n", "lower", "middle", "upper"}, {}};
  for (const auto& row : rows) {
    t.rows.push_back({row.n, row.lower, row.middle, row.upper});
    if (c > 0.0) {
      r.checks.push_back(check_le("varform.scaling-sandwich", "lower <= middle (n=" + num(row.n) + ")",
                                  row.lower, row.middle, tau * row.upper));
    }
    r.checks.push_back(check_le("varform.scaling-sandwich", "middle <= upper (n=" + num(row.n) + ")",
                                row.middle, row.upper, tau * row.upper));
  }
  const auto& last = rows.back();
  r.checks.push_back(check_near("varform.scaling-limit", "middle -> 2E[V]y^2 at largest n",
                                last.middle, last.upper, lim_tol * last.upper));
  r.tables.push_back(std::move(t));
  return r;
}

ScenarioResult run_l1_continuity(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"n_max", "y", "tau", "amplitude"});
  const auto v = first_potential(cfg, cosine_potential());
  const int n_max = p.get<int>("n_max", 1000);
  const double y = p.get<double>("y", 1.0);
  const double tau = p.get<double>("tau", 1e-3);
  const double amp = p.get<double>("amplitude", 1.0);
  if (!(v.v_min() > 0.0)) throw ConfigError("l1-continuity needs v_min > 0");

  // Constants of the continuity proof, from E[V] and v_min only.
  const double ev = v.mean();
  const double c0 = 4.0 * ev;
  const double c1 = std::sqrt(8.0 * c0);
  const double c2 = c1 + 1.0;
  const double c3 = c0 / v.v_min();
  const double big_c = 1.0 + 4.0 * c2 * c3;
  const double eps_max = (v.v_min() / 2.0) / (std::sqrt(32.0 * ev) + 1.0);
  const double l1_unit = amp * 2.0 / kPi;  // || cos(2 pi x) ||_1 = 2 / pi
  const int n0 = static_cast<int>(std::ceil(l1_unit / eps_max - 1e-12));

  ScenarioResult r;
  SolverOptions opts = cfg.solver;
  const double g2 = std::pow(variational_exponent(v, y, opts).gamma, 2);
  Table t{"l1_continuity.csv", {"n", "l1_distance", "abs_change", "bound"}, {}};
  double worst = -1e300;
  int worst_n = n0;
  int failures = 0;
  for (int n = std::max(n0, 1); n <= n_max; ++n) {
    const TrigSeries pert{0.0, {amp / n}, {}};
    const double eps = l1_unit / n;
    const double d = std::abs(std::pow(variational_exponent(v.plus(pert), y, opts).gamma, 2) - g2);
    const double bound = big_c * eps * y * y;
    t.rows.push_back({static_cast<double>(n), eps, d, bound});
    if (d - bound > worst) {
      worst = d - bound;
      worst_n = n;
    }
    if (d > bound + tau * g2) ++failures;
  }
  r.tables.push_back(std::move(t));
  r.tables.push_back(Table{"l1_constants.csv",
                           {"C0", "C1", "C2", "C3", "C", "eps_max", "n0"},
                           {{c0, c1, c2, c3, big_c, eps_max, static_cast<double>(n0)}}});
  r.checks.push_back(check_le("varform.l1-continuity",
                              "max_n (|dGamma^2| - C eps_n y^2) worst n=" + std::to_string(worst_n),
                              worst, 0.0, tau * g2));
  r.checks.push_back(check_le("varform.l1-continuity", "violations for n0..n_max",
                              failures, 0.0, 0.0));
  return r;
}

ScenarioResult run_mc_cross_check(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"omega", "slope_tolerance", "stderr_factor", "dt_tolerance",
                              "dt_halving"});
  const auto v = first_potential(cfg, TorusPotential::constant(1.0));
  const double slope_tol = p.get<double>("slope_tolerance", 0.05);
  const double k = p.get<double>("stderr_factor", 3.0);
  const double dt_tol = p.get<double>("dt_tolerance", 0.02);
  ScenarioResult r;
  if (v.is_constant()) {
    const double c = v.mean();
    const ConstantField field(c, 1);
    const double exact = std::sqrt(2.0 * c);
    if (p.get<bool>("dt_halving", true)) {
      const auto [coarse, fine] = simulate_travel_costs_coupled(field, cfg.mc);
      const auto fc = fit_alpha(coarse);
      const auto ff = fit_alpha(fine);
      r.tables.push_back(estimates_table("mc_estimates.csv", coarse));
      r.tables.push_back(estimates_table("mc_estimates_half_dt.csv", fine));
      r.tables.push_back(Table{"mc_slopes.csv", {"dt", "slope", "stderr", "exact"},
                               {{cfg.mc.dt, fc.slope, fc.stderr_slope, exact},
                                {cfg.mc.dt / 2, ff.slope, ff.stderr_slope, exact}}});
      r.checks.push_back(check_near("mc.constant-slope", "slope vs sqrt(2c)", fc.slope, exact,
                                    slope_tol * exact));
      r.checks.push_back(check_le("mc.dt-refinement", "relative slope shift on halving dt",
                                  std::abs(fc.slope - ff.slope) / std::abs(ff.slope), dt_tol, 0.0));
    } else {
      const auto est = estimate_alpha(field, cfg.mc);
      r.tables.push_back(estimates_table("mc_estimates.csv", est.table));
      r.checks.push_back(check_near("mc.constant-slope", "slope vs sqrt(2c)", est.fit.slope,
                                    exact, slope_tol * exact));
    }
    return r;
  }
  const double omega = p.get<double>("omega", 0.0);
  const TorusRealizationField field(v, omega);
  const auto est = estimate_alpha(field, cfg.mc);
  const double sign = cfg.mc.direction[0] >= 0 ? 1.0 : -1.0;
  const auto g = variational_exponent(v, sign, cfg.solver);
  r.gamma_results.push_back(to_json(g));
  r.tables.push_back(estimates_table("mc_estimates.csv", est.table));
  r.tables.push_back(Table{"mc_slopes.csv", {"slope", "stderr", "gamma"},
                           {{est.fit.slope, est.fit.stderr_slope, g.gamma}}});
  r.checks.push_back(check_near("mc.varform-agreement", "MC slope vs variational gamma",
                                est.fit.slope, g.gamma, k * est.fit.stderr_slope));
  return r;
}

ScenarioResult run_stripe_rate(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"c", "R", "slack", "lambda2_reference", "lambda2_tolerance",
                              "large_R", "large_u", "large_tolerance"});
  const double c = p.get<double>("c", 1.0);
  const double R = p.get<double>("R", 2.0);
  const double slack = p.get<double>("slack", 0.25);
  ScenarioResult r;

  const double j = lines::bessel_j0_first_zero();
  const double l2 = lines::lambda2();
  r.checks.push_back(check_le("lines.lambda2-residual", "|J0(j01)|",
                              std::abs(lines::bessel_j0(j)), 1e-9, 0.0));
  if (p.has("lambda2_reference")) {
    r.checks.push_back(check_near("lines.lambda2", "lambda2 vs reference", l2,
                                  p.get<double>("lambda2_reference", 0.0),
                                  p.get<double>("lambda2_tolerance", 1e-6)));
  }

  const auto t = travel_cost_in_stripe(c, R, cfg.mc);
  r.tables.push_back(estimates_table("stripe_estimates.csv", t));
  const auto& last = t.back();
  const double rate_bound = std::sqrt(2.0 * (c + l2 / (R * R)));
  const double rate = last.usable() ? last.a_hat / last.u : INFINITY;
  r.checks.push_back(check_le("mc.stripe-rate", "-(1/u) ln estimate at largest u", rate,
                              rate_bound, slack));

  if (p.has("large_R")) {
    const double big_r = p.get<double>("large_R", 20.0);
    McConfig big = cfg.mc;
    big.u_grid = {p.get<double>("large_u", 25.0)};
    const auto in = travel_cost_in_stripe(c, big_r, big).front();
    const auto free = travel_cost_to_ball(c, big_r, big).front();
    r.tables.push_back(estimates_table("stripe_large_R.csv", {in, free}));
    r.checks.push_back(check_near("mc.stripe-large-R", "confined vs unconfined rate",
                                  in.a_hat / in.u, free.a_hat / free.u,
                                  p.get<double>("large_tolerance", 0.1) * free.a_hat / free.u));
  }
  return r;
}

ScenarioResult run_cheap_path_demo(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"kappa", "window", "u", "phi", "trials"});
  const double kappa = p.get<double>("kappa", 0.5);
  const double window = p.get<double>("window", 50.0);
  const double u = p.get<double>("u", 8.0);
  const double phi = p.get<double>("phi", 0.6);
  const int trials = p.get<int>("trials", 1000);
  ScenarioResult r;

  const auto s = lines::sample(kappa, window, cfg.seed);
  Table lt{"lines.csv", {"r", "theta"}, {}};
  for (const auto& l : s.lines) lt.rows.push_back({l.r, l.theta});
  r.tables.push_back(std::move(lt));
  try {
    const auto path = lines::construct_cheap_path(s, u, phi);
    const double len = std::hypot(path.p2[0] - path.p1[0], path.p2[1] - path.p1[1]);
    r.tables.push_back(Table{"cheap_path.csv", {"x1", "x2"},
                             {{0.0, 0.0}, {path.p1[0], path.p1[1]}, {path.p2[0], path.p2[1]},
                              {u, 0.0}}});
    r.checks.push_back(check_near("lines.cheap-path-length", "|p2-p1| vs u/cos(pi-theta)",
                                  len, u / std::cos(kPi - path.theta), 1e-9 * std::max(1.0, len)));
  } catch (const lines::NoQualifyingLine&) {
    r.checks.push_back(check_ge("lines.cheap-path-exists", "qualifying line in window", 0.0, 1.0, 0.0));
  }

  // Random single-line configurations.
  Philox4x32 rng(cfg.seed, 1);
  double worst = 0.0;
  int mismatches = 0;
  for (int i = 0; i < trials; ++i) {
    lines::LineProcessSample one;
    one.window = window;
    const lines::Line l{window * (2.0 * rng.uniform01() - 1.0), kPi * (1.0 - rng.uniform01())};
    one.lines.push_back(l);
    const double uu = 1.0 + 20.0 * rng.uniform01();
    const bool qualifies =
        l.theta >= kPi - phi && l.theta < kPi && l.r / std::cos(l.theta) >= 0.0;
    try {
      const auto path = lines::construct_cheap_path(one, uu, phi);
      if (!qualifies) ++mismatches;
      const double len = std::hypot(path.p2[0] - path.p1[0], path.p2[1] - path.p1[1]);
      worst = std::max(worst, std::abs(len - uu / std::cos(kPi - path.theta)) / std::max(1.0, len));
    } catch (const lines::NoQualifyingLine&) {
      if (qualifies) ++mismatches;
    }
  }
  r.checks.push_back(check_le("lines.cheap-path-length", "max relative length error over trials",
                              worst, 1e-9, 0.0));
  r.checks.push_back(check_le("lines.cheap-path-exception", "NoQualifyingLine mismatches",
                              mismatches, 0.0, 0.0));
  return r;
}

struct IndicatorStats {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

// Empirical P(origin within R of a line) for the thinned marked process.
IndicatorStats origin_in_stripe(double kappa_max, double kappa, double R, int samples,
                                std::uint64_t seed) {
  std::vector<double> ind(samples);
  const lines::StripeParams sp{1.0, R, 1.0};
  for (int i = 0; i < samples; ++i) {
    const auto ext = lines::sample_extended(kappa_max, 10.0 * R + 1.0, derive_seed(seed, i));
    ind[i] = std::abs(2.0 - lines::eval_stripe({0.0, 0.0}, lines::thin(ext, kappa), sp));
  }
  const auto m = sample_moments(ind);
  return {m.mean, m.stderr_mean};
}

ScenarioResult run_thinning_check(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"cases", "samples", "kappa_max", "count_samples"});
  const auto cases = p.get<std::vector<std::vector<double>>>(
      "cases", {{0.5, 1.0}, {0.2, 2.0}, {1.0, 0.5}});
  const int samples = p.get<int>("samples", 100000);
  const int count_samples = p.get<int>("count_samples", 5000);
  double kmax = 0.0;
  for (const auto& c : cases) {
    if (c.size() != 2) throw ConfigError("thinning cases are [kappa, R] pairs");
    kmax = std::max(kmax, c[0]);
  }
  kmax = p.get<double>("kappa_max", std::max(kmax, 1.0));
  ScenarioResult r;
  Table t{"thinning.csv", {"kappa", "R", "empirical", "stderr", "exact"}, {}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const double kappa = cases[i][0], R = cases[i][1];
    const auto st = origin_in_stripe(kmax, kappa, R, samples, derive_seed(cfg.seed, i));
    const double exact = 1.0 - std::exp(-2.0 * kappa * R);
    t.rows.push_back({kappa, R, st.mean, st.stderr_mean, exact});
    r.checks.push_back(check_near("lines.thinning-identity",
                                  "E|2-V(0)| (kappa=" + num(kappa) + " R=" + num(R) + ")",
                                  st.mean, exact, 3.0 * st.stderr_mean));
  }
  r.tables.push_back(std::move(t));

  // Push-forward: counts after thinning match direct sampling.
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const double kappa = cases[i][0];
    std::vector<double> a(count_samples), b(count_samples);
    for (int s = 0; s < count_samples; ++s) {
      a[s] = lines::thin(lines::sample_extended(kmax, 10.0, derive_seed(cfg.seed + 101, s)), kappa)
                 .lines.size();
      b[s] = lines::sample(kappa, 10.0, derive_seed(cfg.seed + 202, s)).lines.size();
    }
    const auto ma = sample_moments(a), mb = sample_moments(b);
    r.checks.push_back(check_near("lines.thinning-pushforward",
                                  "mean count thinned vs direct (kappa=" + num(kappa) + ")",
                                  ma.mean, mb.mean,
                                  3.0 * std::hypot(ma.stderr_mean, mb.stderr_mean)));
  }
  return r;
}

ScenarioResult run_untypical_scaling(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"n", "b", "samples", "empirical_n_max"});
  const auto ns = p.get<std::vector<double>>(
      "n", {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024});
  const double b = p.get<double>("b", 1.0);
  const int samples = p.get<int>("samples", 20000);
  const double emp_max = p.get<double>("empirical_n_max", 64.0);
  const double l2 = lines::lambda2();
  ScenarioResult r;
  Table t{"untypical_scaling.csv",
          {"n", "lp_distance_exact", "lp_distance_empirical", "stderr", "D_n", "rate_bound"}, {}};
  double prev_bound = INFINITY;
  bool monotone = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double n = ns[i];
    if (!(n > 1.0)) throw ConfigError("untypical-scaling needs n > 1");
    const double exact = 1.0 - std::exp(-2.0 * b / n);
    const double d_n = 4.0 * std::sqrt(l2) / (n - 1.0);
    const double bound = std::sqrt(2.0) + std::sqrt(n) * d_n;
    double emp = NAN, se = NAN;
    if (n <= emp_max) {
      const double kappa = 1.0 / (n * n);
      const auto st = origin_in_stripe(kappa, kappa, b * n, samples, derive_seed(cfg.seed, i));
      emp = st.mean;
      se = st.stderr_mean;
      r.checks.push_back(check_near("lines.untypical-lp", "E|n V_n - 2| (n=" + num(n) + ")",
                                    emp, exact, 3.0 * se + 1e-12));
    }
    if (bound > prev_bound) monotone = false;
    prev_bound = bound;
    t.rows.push_back({n, exact, emp, se, d_n, bound});
  }
  r.tables.push_back(std::move(t));
  r.checks.push_back(check_ge("lines.untypical-bound", "rate bound decreasing in n",
                              monotone ? 1.0 : 0.0, 1.0, 0.0));
  r.checks.push_back(check_lt("lines.untypical-bound", "sqrt2 + sqrt(n) D_n below 2 at largest n",
                              prev_bound, 2.0));
  return r;
}

ScenarioResult run_discontinuity_demo(const ExperimentConfig& cfg) {
  const Params p(cfg.params, {"kappas", "c", "M", "D", "R", "realizations", "slack",
                              "m_small", "constant_tolerance"});
  DiscontinuityParams dp;
  dp.kappas = p.get<std::vector<double>>("kappas", dp.kappas);
  dp.c = p.get<double>("c", dp.c);
  dp.M = p.get<double>("M", dp.M);
  dp.D = p.get<double>("D", (2.0 - std::sqrt(2.0)) / 2.0);
  if (p.has("R")) dp.R = p.get<double>("R", 0.0);
  dp.realizations = p.get<int>("realizations", dp.realizations);
  const double slack = p.get<double>("slack", 0.15);
  const double const_tol = p.get<double>("constant_tolerance", 0.05);
  if (!(dp.D > 0.0)) throw ConfigError("discontinuity-demo needs D > 0");
  const double r0 = lines::r0_for(dp.D);
  if (dp.R && *dp.R < r0) throw ConfigError("discontinuity-demo needs R >= r0_for(D)");

  ScenarioResult r;
  auto rows = discontinuity_demo(dp, cfg.mc);
  if (p.has("m_small")) {
    DiscontinuityParams small = dp;
    small.kappas = {0.0};
    small.M = p.get<double>("m_small", 0.01);
    small.realizations = 1;
    for (const auto& row : discontinuity_demo(small, cfg.mc)) rows.push_back(row);
  }
  Table t{"discontinuity.csv", {"kappa", "M", "realization", "slope", "stderr", "lines"}, {}};
  for (const auto& row : rows) {
    t.rows.push_back({row.kappa, row.M, static_cast<double>(row.realization), row.slope,
                      row.stderr_slope, row.lines});
    const std::string tag = "(kappa=" + num(row.kappa) + " M=" + num(row.M) + " rep=" +
                            std::to_string(row.realization) + ")";
    if (row.kappa == 0.0) {
      const double exact = std::sqrt(2.0 * (dp.c + row.M));
      r.checks.push_back(check_near("demo.no-lines-slope", "slope " + tag, row.slope, exact,
                                    const_tol * exact));
    } else {
      r.checks.push_back(check_le("demo.lines-slope", "slope " + tag, row.slope,
                                  std::sqrt(2.0 * dp.c) + dp.D, slack));
    }
  }
  r.tables.push_back(std::move(t));
  return r;
}

using Runner = ScenarioResult (*)(const ExperimentConfig&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m{
      {"props-suite", run_props_suite},
      {"const-check", run_const_check},
      {"strict-inequality", run_strict_inequality},
      {"scaling-rate", run_scaling_rate},
      {"l1-continuity", run_l1_continuity},
      {"mc-cross-check", run_mc_cross_check},
      {"stripe-lemma", run_stripe_rate},
      {"cheap-path-demo", run_cheap_path_demo},
      {"thinning-check", run_thinning_check},
      {"untypical-scaling", run_untypical_scaling},
      {"discontinuity-demo", run_discontinuity_demo},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : runners()) v.push_back(k);
    return v;
  }();
  return names;
}

ScenarioResult run(const ExperimentConfig& cfg) {
  const auto it = runners().find(cfg.scenario);
  if (it == runners().end()) throw ConfigError("unknown scenario '" + cfg.scenario + "'");
  ScenarioResult r;
  try {
    r = it->second(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  r.scenario = cfg.scenario;
  return r;
}

std::vector<TorusPotential> default_corpus() {
  std::vector<TorusPotential> out;
  out.push_back(TorusPotential::constant(2.0));
  out.push_back(TorusPotential::trig(2.0, {1.0}, {}));
  out.push_back(TorusPotential::trig(2.0, {0.9, 0.0}, {0.0, 0.3}));
  // Random 8-mode potential, amplitudes decaying like 1/k, total 1.5.
  Philox4x32 rng(11, 0);
  std::vector<double> c(8), s(8);
  double total = 0.0;
  for (int k = 0; k < 8; ++k) {
    c[k] = (2.0 * rng.uniform01() - 1.0) / (k + 1);
    s[k] = (2.0 * rng.uniform01() - 1.0) / (k + 1);
    total += std::abs(c[k]) + std::abs(s[k]);
  }
  for (int k = 0; k < 8; ++k) {
    c[k] *= 1.5 / total;
    s[k] *= 1.5 / total;
  }
  out.push_back(TorusPotential::trig(2.0, c, s));
  std::vector<double> g(64);
  for (int i = 0; i < 64; ++i) {
    const double x = i / 64.0;
    g[i] = 2.0 + 0.7 * std::sin(2 * kPi * x) + 0.4 * std::cos(6 * kPi * x);
  }
  out.push_back(TorusPotential::grid(g));
  return out;
}

}  // namespace lyap::experiments
