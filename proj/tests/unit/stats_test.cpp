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


#include "lyap/stats.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lyap {
namespace {

TEST(PairwiseSum, MatchesExactSumOfIntegers) {
  std::vector<double> v(10007);
  std::iota(v.begin(), v.end(), 1.0);
  EXPECT_EQ(pairwise_sum(v), 10007.0 * 10008.0 / 2.0);
  EXPECT_EQ(pairwise_sum({}), 0.0);
}

TEST(PairwiseSum, BeatsNaiveSummationOnSmallIncrements) {
  std::vector<double> v(1 << 20, 0.1);
  const double exact = 0.1 * static_cast<double>(v.size());
  double naive = 0.0;
  for (double x : v) naive += x;
  EXPECT_LE(std::abs(pairwise_sum(v) - exact), std::abs(naive - exact));
  EXPECT_NEAR(pairwise_sum(v), exact, 1e-9);
}

TEST(SampleMoments, KnownValues) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const SampleMoments m = sample_moments(v);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_DOUBLE_EQ(m.variance, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.stderr_mean, std::sqrt(5.0 / 12.0));
  EXPECT_EQ(m.n, 4u);
}

TEST(ParallelFor, CoversEveryIndexOnce) {
  for (unsigned workers : {1u, 2u, 3u, 8u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) ASSERT_EQ(h, 1);
  }
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, 4,
                            [](std::size_t b, std::size_t) {
                              if (b == 0) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

}  // namespace
}  // namespace lyap
