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

#ifndef LYAP_STATS_HPP_
#define LYAP_STATS_HPP_

#include <cstddef>
#include <functional>
#include <span>

namespace lyap {

/// Pairwise (cascade) summation in a fixed order over the index range.
/// The result depends only on the input sequence, never on scheduling.
double pairwise_sum(std::span<const double> values);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double stderr_mean = 0.0;
  std::size_t n = 0;
};

/// Mean, unbiased variance and standard error, using pairwise sums.
SampleMoments sample_moments(std::span<const double> values);

/// Runs body(begin, end) over contiguous chunks of [0, n) on up to
/// `workers` threads (0 = hardware concurrency). The body must only write
/// to per-index storage; chunk boundaries never affect results.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace lyap

#endif  // LYAP_STATS_HPP_
