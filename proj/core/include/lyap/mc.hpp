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


#ifndef LYAP_MC_HPP_
#define LYAP_MC_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lyap/field.hpp"

namespace lyap {

struct McConfig {
  double dt = 1e-3;
  std::size_t n_paths = 10000;
  double t_max = 15.0;
  std::uint64_t seed = 1;
  /// Unit direction of travel; only the first entry's sign is used in 1-D.
  std::array<double, 2> direction{1.0, 0.0};
  /// Strictly increasing target distances, each > 1.
  std::vector<double> u_grid{3.0, 4.0, 5.0, 6.0};
  /// Truncated paths contribute the weight accumulated so far (true) or 0.
  bool keep_truncated_weight = true;
  /// 0 = hardware concurrency. Results never depend on this.
  unsigned workers = 0;
  /// Subtract ((d-1)/2) ln u from each a_hat before the slope fit.
  bool log_prefactor = false;

  void validate() const;
};

enum class EstimateStatus {
  kOk,
  /// Every path was truncated before reaching the target.
  kAllTruncated,
  /// No path contributed a positive weight (or the mean weight underflows).
  kUnderflow,
};

const char* to_string(EstimateStatus s) noexcept;

struct TravelCostEstimate {
  double u = 0.0;
  /// -ln(mean weight).
  double a_hat = 0.0;
  /// Delta method: stderr of weights / mean weight.
  double stderr_a = 0.0;
  /// Paths that reached the target.
  std::size_t n_effective = 0;
  double truncated_fraction = 0.0;
  double mean_weight = 0.0;
  EstimateStatus status = EstimateStatus::kOk;

  bool usable() const noexcept { return status == EstimateStatus::kOk; }
};

/// Feynman-Kac travel cost to the unit ball around u * direction, by
/// Euler-Maruyama paths from 0 with left-point weights exp(-sum V dt).
TravelCostEstimate simulate_travel_cost(const Field& field, double u,
                                        McConfig cfg);

/// One pass over the paths records every u in cfg.u_grid.
std::vector<TravelCostEstimate> simulate_travel_costs(const Field& field,
                                                      const McConfig& cfg);

/// Runs step dt and step dt/2 on shared Brownian increments: the coarse path
/// moves by the sum of two fine increments. Returns {coarse, fine}.
std::pair<std::vector<TravelCostEstimate>, std::vector<TravelCostEstimate>>
simulate_travel_costs_coupled(const Field& field, const McConfig& cfg);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::size_t points = 0;
};

/// Weighted least squares of a_hat on u (weights 1/stderr^2, free intercept);
/// ordinary least squares when some usable stderr is zero. Throws
/// std::runtime_error with fewer than 3 usable points.
SlopeFit fit_alpha(std::span<const TravelCostEstimate> table, int dimension = 1,
                   bool log_prefactor = false);

struct AlphaEstimate {
  SlopeFit fit;
  std::vector<TravelCostEstimate> table;
};

AlphaEstimate estimate_alpha(const Field& field, const McConfig& cfg);

/// Planar paths with killing rate c confined to the stripe |x2| < R: the mean
/// of exp(-c H) over paths that enter the ball B_R(u e1) before leaving the
/// stripe. Leaving the stripe or reaching t_max contributes 0. One estimate
/// per u in cfg.u_grid; each u must exceed R.
std::vector<TravelCostEstimate> travel_cost_in_stripe(double c, double R,
                                                      const McConfig& cfg);

/// Same target and killing without the stripe constraint.
std::vector<TravelCostEstimate> travel_cost_to_ball(double c, double R,
                                                    const McConfig& cfg);

}  // namespace lyap

#endif  // LYAP_MC_HPP_
