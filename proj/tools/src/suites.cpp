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
#include <string>

#include "lyap/experiments.hpp"
#include "lyap/line_process.hpp"
#include "lyap/rng.hpp"

namespace lyap::experiments {

namespace {

double gamma_sq(const TorusPotential& v, double y, const SolverOptions& o) {
  const double g = variational_exponent(v, y, o).gamma;
  return g * g;
}

std::string tag(const std::string& what, std::size_t i) {
  return what + " [V" + std::to_string(i) + "]";
}

}  // namespace

std::vector<Check> props_suite(const std::vector<TorusPotential>& corpus,
                               const SolverOptions& opts, double tau,
                               std::uint64_t seed) {
  std::vector<Check> out;
  Philox4x32 rng(seed, 7);
  const TrigSeries bump{0.5, {0.25}, {0.1}};  // nonnegative, so V <= V + bump

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& v = corpus[i];
    const auto base = variational_exponent(v, 1.0, opts);
    const double g1 = base.gamma;
    const double g1sq = g1 * g1;
    const double scale = std::max(1.0, g1sq);

    out.push_back(check_near("varform.product-form", tag("gamma = 2 sqrt(K B)", i), g1,
                             2.0 * std::sqrt(base.K_value * base.B_value), 1e-12 * scale));
    out.push_back(check_ge("varform.transport-lower", tag("B >= y^2/2", i), base.B_value, 0.5,
                           1e-12));
    out.push_back(check_ge("varform.ground-state", tag("gamma^2 >= 2 sigma_s0 y^2", i), g1sq,
                           2.0 * base.sigma_s0, tau * scale));

    for (double c : {0.5, 2.0, 3.7}) {
      const double gc = variational_exponent(v, c, opts).gamma;
      out.push_back(check_near("varform.homogeneity", tag("gamma(c y) = |c| gamma(y), c=" + format_number(c), i),
                               gc, c * g1, tau * std::max(1.0, c * g1)));
    }
    out.push_back(check_near("varform.symmetry", tag("gamma(-y) = gamma(y)", i),
                             variational_exponent(v, -1.0, opts).gamma, g1,
                             tau * std::max(1.0, g1)));
    if (base.sigma_s0 > 0.0) {
      for (int t = 0; t < 4; ++t) {
        const double a = 4.0 * rng.uniform01() - 2.0;
        const double b = 4.0 * rng.uniform01() - 2.0;
        const double lhs = variational_exponent(v, a + b, opts).gamma;
        const double rhs = variational_exponent(v, a, opts).gamma +
                           variational_exponent(v, b, opts).gamma;
        out.push_back(check_le("varform.triangle", tag("gamma(a+b) <= gamma(a)+gamma(b) #" + std::to_string(t), i),
                               lhs, rhs, tau * std::max(1.0, rhs)));
      }
    }
    for (double c : {1.5, 4.0}) {
      out.push_back(check_le("varform.scaling-up", tag("gamma^2(cV) <= c gamma^2(V), c=" + format_number(c), i),
                             gamma_sq(v.scaled(c), 1.0, opts), c * g1sq, tau * c * scale));
    }
    for (double c : {0.1, 0.5}) {
      out.push_back(check_ge("varform.scaling-down", tag("gamma^2(cV) >= c gamma^2(V), c=" + format_number(c), i),
                             gamma_sq(v.scaled(c), 1.0, opts), c * g1sq, tau * scale));
    }
    for (double c : {0.25, 1.0, 3.0}) {
      const double lhs = gamma_sq(v.shifted(c), 1.0, opts);
      out.push_back(check_ge("varform.shift", tag("gamma^2(c+V) >= gamma^2(V) + 2c, c=" + format_number(c), i),
                             lhs, g1sq + 2.0 * c, tau * std::max(1.0, lhs)));
    }
    out.push_back(check_le("varform.monotone", tag("gamma(V) <= gamma(V + bump)", i), g1,
                           variational_exponent(v.plus(bump), 1.0, opts).gamma,
                           tau * std::max(1.0, g1)));
    for (unsigned m : {2u, 3u, 4u}) {
      out.push_back(check_ge("varform.symmetrization", tag("gamma(sym_m V) >= gamma(V), m=" + std::to_string(m), i),
                             variational_exponent(symmetrize(v, m), 1.0, opts).gamma, g1,
                             tau * std::max(1.0, g1)));
    }
  }

  // Concavity of gamma^2 in V over random convex combinations of the corpus.
  if (corpus.size() >= 2) {
    std::vector<double> sq(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) sq[i] = gamma_sq(corpus[i], 1.0, opts);
    for (int t = 0; t < 4; ++t) {
      std::vector<double> w(corpus.size());
      double total = 0.0;
      for (auto& x : w) total += (x = rng.uniform01());
      double rhs = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) rhs += (w[i] /= total) * sq[i];
      const auto mix = linear_combination(w, corpus);
      out.push_back(check_ge("varform.concavity", "gamma^2(sum w V) >= sum w gamma^2(V) #" + std::to_string(t),
                             gamma_sq(mix, 1.0, opts), rhs, tau * std::max(1.0, rhs)));
    }
  }

  // E[f] E[1/f] >= 1 on random grid densities.
  double worst = INFINITY;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> f(opts.grid_N);
    const double amp = 3.0 * rng.uniform01();
    for (auto& x : f) x = std::exp(amp * (2.0 * rng.uniform01() - 1.0));
    const auto d = DensityField::normalized(std::move(f));
    worst = std::min(worst, 2.0 * transport_functional(d, 1.0));
  }
  out.push_back(check_ge("varform.inverse-holder", "min E[1/f] over mean-one densities", worst, 1.0,
                         1e-12));
  return out;
}

std::vector<SandwichRow> scaling_sandwich(const TorusPotential& v, double c,
                                          const std::vector<double>& ns, double y,
                                          const SolverOptions& opts) {
  const double lower = gamma_sq(v, y, opts);
  const double base = 2.0 * c * y * y;
  std::vector<SandwichRow> out;
  for (double n : ns) {
    const double g = gamma_sq(v.scaled(1.0 / n).shifted(c), y, opts);
    out.push_back({n, lower, n * (g - base), 2.0 * v.mean() * y * y});
  }
  return out;
}

std::vector<DiscontinuityRow> discontinuity_demo(const DiscontinuityParams& p,
                                                 const McConfig& mc) {
  const double d = p.D > 0.0 ? p.D : (2.0 - std::sqrt(2.0)) / 2.0;
  const double r = p.R.value_or(lines::r0_for(d));
  double u_max = 0.0;
  for (double u : mc.u_grid) u_max = std::max(u_max, u);
  const double window = 10.0 * r + u_max + 20.0;
  std::vector<DiscontinuityRow> out;
  for (std::size_t k = 0; k < p.kappas.size(); ++k) {
    for (int rep = 0; rep < p.realizations; ++rep) {
      auto s = lines::sample(p.kappas[k], window, derive_seed(mc.seed, 1000 * k + rep));
      const double count = static_cast<double>(s.lines.size());
      const lines::StripeField field(std::move(s), {p.c, r, p.M});
      McConfig run = mc;
      run.seed = derive_seed(mc.seed, 7919 + 1000 * k + rep);
      const auto est = estimate_alpha(field, run);
      out.push_back({p.kappas[k], p.M, rep, est.fit.slope, est.fit.stderr_slope, count});
    }
  }
  return out;
}

}  // namespace lyap::experiments
