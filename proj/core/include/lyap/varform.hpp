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

#ifndef LYAP_VARFORM_HPP_
#define LYAP_VARFORM_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lyap/potential.hpp"

namespace lyap {

/// Trial density on the uniform torus grid x_i = i/N: positive values with
/// grid mean 1 (within 1e-12) and every value >= floor > 0.
class DensityField {
 public:
  /// Validates the invariants; floor defaults to the smallest value.
  explicit DensityField(std::vector<double> values);
  DensityField(std::vector<double> values, double floor);

  /// Rescales positive values to grid mean 1.
  static DensityField normalized(std::vector<double> values);
  static DensityField uniform(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double floor() const noexcept { return floor_; }

 private:
  std::vector<double> values_;
  double floor_;
};

/// Energy E[f'^2/(8 f) + V f] on the grid: periodic central differences for
/// f' and the periodic trapezoid (node average) for E.
double energy_functional(const DensityField& f, const TorusPotential& v);
/// Same functional against potential values already sampled at the nodes.
double energy_functional(const DensityField& f, std::span<const double> v_nodes);

/// Cheapest transport E[phi^2/(2 f)] over mean-y divergence-free fields.
/// In one dimension the only such field is phi == y, so this is y^2 E[1/(2f)].
double transport_functional(const DensityField& f, double y);

/// Corrector energy inf_w E[(w' - eta)^2 f] = eta^2 / E[1/f], attained by
/// w' = eta - eta / (f E[1/f]).
double corrector_functional(const DensityField& f, double eta);

struct SolverOptions {
  std::size_t grid_N = 512;
  int max_iter = 5000;
  /// Stop when the relative objective decrease of one step falls below tol.
  double tol = 1e-10;
  /// Also start from the best member of the power family V^-p / E[V^-p].
  bool restarts = true;
  std::vector<double> p_scan{0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.6, 0.8, 1.0};
  /// Re-solve on a 2N grid and report the refined value.
  bool refine = true;
};

struct VariationalResult {
  double gamma = 0.0;
  double K_value = 0.0;
  double B_value = 0.0;
  /// Separate minimization of the energy alone (ground-state energy).
  double sigma_s0 = 0.0;
  DensityField minimizer = DensityField::uniform(1);
  int iterations = 0;
  bool converged = false;
  std::size_t grid_N = 0;
  double y = 0.0;
  /// Value on the 2N grid when SolverOptions::refine is set.
  std::optional<double> gamma_refined;
  /// Best p from the power-family scan when a restart was used.
  std::optional<double> restart_p;
  /// Objective 2 K E[1/f] per accepted iterate of the winning run.
  std::vector<double> objective_trace;
};

/// Minimizes 4 K(f) B(f) over grid densities f = exp(g) / mean(exp(g)) by
/// preconditioned gradient descent with Armijo backtracking. The reported
/// value is the best feasible value found, i.e. an upper bound for the
/// discrete infimum; non-convergence is flagged but the bound stays valid.
VariationalResult variational_exponent(const TorusPotential& v, double y,
                                       const SolverOptions& opts = {});

/// sqrt of 2 y^2 E[p^2 V'^2 / (8 V^(p+2)) + V^(1-p)] E[V^p]: the value of the
/// variational objective at the density proportional to V^-p. Requires
/// v_min > 0 (throws std::domain_error otherwise).
double power_family_bound(const TorusPotential& v, double y, double p);

/// Cov(V, ln V) = E[V ln V] - E[V] E[ln V] by fine periodic quadrature.
/// Requires v_min > 0 (throws std::domain_error otherwise).
double cov_v_log_v(const TorusPotential& v);

/// E[g] for a torus function by the periodic trapezoid rule on n nodes.
template <class F>
double torus_average(F&& fn, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += fn(static_cast<double>(i) / static_cast<double>(n));
  }
  return s / static_cast<double>(n);
}

/// The solver objective in log-density coordinates g, exposed for gradient
/// checks: value is 2 K(f) E[1/f] (or K(f) alone when energy_only).
class LogDensityObjective {
 public:
  LogDensityObjective(std::vector<double> v_nodes, bool energy_only = false);

  std::size_t size() const noexcept { return v_nodes_.size(); }
  double value(std::span<const double> g) const;
  /// Returns the value; writes d value / d g_k into grad.
  double value_and_gradient(std::span<const double> g,
                            std::span<double> grad) const;
  /// Last-evaluated energy and mean inverse density.
  double last_energy() const noexcept { return last_k_; }
  double last_inverse_mean() const noexcept { return last_m_; }

 private:
  std::vector<double> v_nodes_;
  bool energy_only_;
  mutable std::vector<double> f_, d_, gf_;
  mutable double last_k_ = 0.0;
  mutable double last_m_ = 0.0;
};

}  // namespace lyap

#endif  // LYAP_VARFORM_HPP_
