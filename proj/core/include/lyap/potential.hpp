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

#ifndef LYAP_POTENTIAL_HPP_
#define LYAP_POTENTIAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace lyap {

/// Maps any real to its representative in [0, 1).
double wrap_unit(double x) noexcept;

/// A signed trigonometric polynomial
///   a0 + sum_k cos_coeffs[k-1] cos(2 pi k x) + sin_coeffs[k-1] sin(2 pi k x).
/// Not necessarily a potential; used to build and perturb potentials.
struct TrigSeries {
  double a0 = 0.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;

  std::size_t modes() const noexcept;
  double operator()(double x) const noexcept;
  double derivative(double x) const noexcept;
  /// a0 -/+ sum of |coefficients|.
  double lower_bound() const noexcept;
  double upper_bound() const noexcept;
};

enum class PotentialKind { kConstant, kTrig, kGrid };

/// A nonnegative periodic potential on the 1-D torus [0, 1).
///
/// Every instance carries certified bounds v_min <= V(x) <= v_max with
/// v_min >= 0. Trigonometric bounds are the analytic a0 -/+ sum|coeff|
/// (clamped at zero); grid bounds come from the nodes, which bound the
/// periodic linear interpolant exactly.
class TorusPotential {
 public:
  static TorusPotential constant(double c);
  static TorusPotential trig(TrigSeries series);
  static TorusPotential trig(double a0, std::vector<double> cos_coeffs,
                             std::vector<double> sin_coeffs);
  static TorusPotential grid(std::vector<double> samples);
  /// Grid potential with user-supplied bounds; they must enclose the nodes.
  static TorusPotential grid(std::vector<double> samples, double v_min,
                             double v_max);

  PotentialKind kind() const noexcept { return kind_; }
  double v_min() const noexcept { return v_min_; }
  double v_max() const noexcept { return v_max_; }

  /// Value at torus point x (any real; reduced mod 1).
  double operator()(double x) const noexcept;
  /// Exact derivative for constant/trig kinds; for grid kind a central
  /// difference at the node spacing (not certified).
  double derivative(double x) const noexcept;
  double mean() const noexcept;

  /// True when the potential is identically constant.
  bool is_constant() const noexcept;

  const TrigSeries& series() const noexcept { return series_; }
  std::span<const double> samples() const noexcept { return samples_; }

  /// Values at the nodes i/n, i = 0..n-1.
  std::vector<double> sample_nodes(std::size_t n) const;

  TorusPotential scaled(double factor) const;
  TorusPotential shifted(double offset) const;
  /// V + s; the result must stay nonnegative.
  TorusPotential plus(const TrigSeries& s) const;

 private:
  TorusPotential() = default;
  void finalize_trig_bounds();

  PotentialKind kind_ = PotentialKind::kConstant;
  TrigSeries series_;
  std::vector<double> samples_;
  double v_min_ = 0.0;
  double v_max_ = 0.0;
};

/// sum_i weights[i] * potentials[i] + offset, with nonnegative weights.
/// Grid terms must share one node count; smooth terms are sampled onto it.
TorusPotential linear_combination(std::span<const double> weights,
                                  std::span<const TorusPotential> potentials,
                                  double offset = 0.0);

/// A potential viewed along the orbit of a torus point omega:
/// x -> V(omega + x mod 1).
struct Realization {
  TorusPotential base;
  double omega = 0.0;

  double operator()(double x) const noexcept { return base(omega + x); }
  double derivative(double x) const noexcept {
    return base.derivative(omega + x);
  }
};

double eval_realization(const TorusPotential& v, double omega, double x);
double grad_realization(const TorusPotential& v, double omega, double x);
double mean(const TorusPotential& v);

/// Conditional expectation onto the functions invariant under x -> x + 1/m:
///   W(x) = (1/m) sum_{j<m} V(x + j/m).
/// Trig kind keeps the harmonics divisible by m; grid kind averages shifted
/// interpolants at the nodes. Throws std::invalid_argument for m == 0.
TorusPotential symmetrize(const TorusPotential& v, unsigned m);

}  // namespace lyap

#endif  // LYAP_POTENTIAL_HPP_
