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


#include "lyap/potential.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lyap/rng.hpp"
#include "test_corpus.hpp"

namespace lyap {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Potential, RealizationExamples) {
  const auto v = TorusPotential::trig(2.0, {1.0}, {});
  EXPECT_NEAR(eval_realization(v, 0.25, 0.25), 1.0, 1e-14);
  EXPECT_EQ(eval_realization(TorusPotential::constant(3.5), 0.7, -12.3), 3.5);
  const auto g = TorusPotential::grid({1.0, 3.0, 2.0, 4.0});
  // x = 0.3 lies 20% of the way from node 1 (0.25) to node 2 (0.5).
  EXPECT_NEAR(eval_realization(g, 0.0, 0.3), 3.0 + 0.2 * (2.0 - 3.0), 1e-14);
  EXPECT_NEAR(eval_realization(g, 0.0, 0.9), 4.0 + 0.6 * (1.0 - 4.0), 1e-14);
}

TEST(Potential, Periodicity) {
  for (const auto& v : testing_corpus::corpus()) {
    for (double x : {0.0, 0.13, 0.5, 0.77}) {
      EXPECT_NEAR(v(x), v(x + 1.0), 1e-12);
      EXPECT_NEAR(v(x), v(x - 3.0), 1e-12);
    }
  }
}

TEST(Potential, MeanExamples) {
  EXPECT_EQ(mean(TorusPotential::constant(3.0)), 3.0);
  EXPECT_EQ(mean(TorusPotential::trig(2.0, {1.0}, {})), 2.0);
  EXPECT_EQ(mean(TorusPotential::grid({1.0, 2.0, 3.0, 2.0})), 2.0);
}

TEST(Potential, GradientExamples) {
  const auto v = TorusPotential::trig(2.0, {1.0}, {});
  EXPECT_NEAR(grad_realization(v, 0.0, 0.0), 0.0, 1e-14);
  EXPECT_NEAR(grad_realization(v, 0.0, 0.25), -2.0 * kPi, 1e-12);
  // Trig derivative against a central difference of the evaluator.
  const auto w = TorusPotential::trig(2.0, {0.9, 0.1, 0.05}, {0.0, 0.3, -0.2});
  for (double x : {0.05, 0.31, 0.62, 0.99}) {
    const double h = 1e-5;
    EXPECT_NEAR(w.derivative(x), (w(x + h) - w(x - h)) / (2 * h), 1e-6);
  }
  // Grid kind: central difference at node spacing.
  const auto g = TorusPotential::grid({1.0, 3.0, 2.0, 4.0});
  EXPECT_NEAR(grad_realization(g, 0.0, 0.25), (2.0 - 1.0) / 0.5, 1e-12);
}

TEST(Potential, ShiftCovariance) {
  Philox4x32 rng(2024, 0);
  for (const auto& v : testing_corpus::corpus()) {
    if (v.kind() != PotentialKind::kTrig) continue;
    for (int i = 0; i < 1000; ++i) {
      const double omega = rng.uniform01();
      const double x = 10.0 * rng.uniform01() - 5.0;
      const double s = 10.0 * rng.uniform01() - 5.0;
      ASSERT_NEAR(eval_realization(v, omega, x + s),
                  eval_realization(v, wrap_unit(omega + s), x), 1e-12);
    }
  }
}

TEST(Potential, BoundsEncloseFineGrid) {
  for (const auto& v : testing_corpus::corpus()) {
    EXPECT_GE(v.v_min(), 0.0);
    for (int i = 0; i < 8192; ++i) {
      const double val = v(i / 8192.0);
      ASSERT_GE(val, v.v_min() - 1e-14);
      ASSERT_LE(val, v.v_max() + 1e-14);
    }
  }
}

TEST(Potential, RejectsNegativeInputs) {
  EXPECT_THROW(TorusPotential::constant(-1.0), std::invalid_argument);
  EXPECT_THROW(TorusPotential::trig(0.5, {1.0}, {}), std::invalid_argument);
  EXPECT_THROW(TorusPotential::grid({1.0, -0.1, 2.0}), std::invalid_argument);
  EXPECT_THROW(TorusPotential::grid({1.0, 2.0}, 1.5, 3.0), std::invalid_argument);
  // A trig polynomial with a negative analytic bound but nonnegative values.
  const auto v = TorusPotential::trig(1.1, {0.9, 0.0}, {0.0, 0.3});
  EXPECT_EQ(v.v_min(), 0.0);
}

TEST(Symmetrize, Examples) {
  const auto v = TorusPotential::trig(2.0, {1.0}, {});
  const auto w = symmetrize(v, 2);
  EXPECT_TRUE(w.is_constant());
  EXPECT_NEAR(w(0.3), 2.0, 1e-14);
  for (const auto& u : testing_corpus::corpus()) {
    const auto same = symmetrize(u, 1);
    for (double x : {0.0, 0.2, 0.45}) EXPECT_EQ(same(x), u(x));
  }
  const auto half = TorusPotential::trig(2.0, {0.0, 1.0}, {});
  const auto s = symmetrize(half, 2);
  for (double x : {0.0, 0.1, 0.37}) EXPECT_NEAR(s(x), half(x), 1e-14);
  EXPECT_THROW(symmetrize(v, 0), std::invalid_argument);
}

TEST(Symmetrize, MatchesDefinitionAndPreservesMean) {
  for (const auto& v : testing_corpus::corpus()) {
    for (unsigned m : {2u, 3u, 4u, 5u}) {
      const auto w = symmetrize(v, m);
      EXPECT_NEAR(mean(w), mean(v), 1e-12);
      EXPECT_GE(w.v_min(), v.v_min() - 1e-14);
      EXPECT_LE(w.v_max(), v.v_max() + 1e-14);
      if (v.kind() == PotentialKind::kGrid && v.samples().size() % m != 0) continue;
      const std::size_t n = v.kind() == PotentialKind::kGrid ? v.samples().size() : 64;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n);
        double avg = 0.0;
        for (unsigned j = 0; j < m; ++j) avg += v(x + static_cast<double>(j) / m);
        avg /= m;
        ASSERT_NEAR(w(x), avg, 1e-12);
        ASSERT_NEAR(w(x), w(x + 1.0 / m), 1e-12);
      }
    }
  }
}

// Averaging over 1/m shifts and then 1/k shifts averages over the subgroup
// generated by both, which is the 1/lcm(m, k) shifts.
TEST(Symmetrize, CompositionIsLcm) {
  const auto v = testing_corpus::random_trig(8, 0.5, 77);
  const std::vector<std::pair<unsigned, unsigned>> pairs{{2, 3}, {2, 4}, {3, 2}, {4, 6}, {2, 5}};
  for (auto [m, k] : pairs) {
    const auto lhs = symmetrize(symmetrize(v, m), k);
    const auto rhs = symmetrize(v, std::lcm(m, k));
    for (int i = 0; i < 128; ++i) ASSERT_NEAR(lhs(i / 128.0), rhs(i / 128.0), 1e-12);
  }
  std::vector<double> nodes(120);
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = 2.0 + std::sin(0.37 * i * i);
  const auto g = TorusPotential::grid(nodes);
  for (auto [m, k] : pairs) {
    const auto lhs = symmetrize(symmetrize(g, m), k);
    const auto rhs = symmetrize(g, std::lcm(m, k));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      ASSERT_NEAR(lhs.samples()[i], rhs.samples()[i], 1e-12);
    }
  }
}

TEST(LinearCombination, KindsAndValues) {
  const auto a = TorusPotential::trig(2.0, {1.0}, {});
  const auto b = TorusPotential::constant(1.5);
  const double w[] = {0.25, 2.0};
  const TorusPotential p[] = {a, b};
  const auto c = linear_combination(w, p, 0.5);
  EXPECT_EQ(c.kind(), PotentialKind::kTrig);
  for (double x : {0.0, 0.3}) EXPECT_NEAR(c(x), 0.25 * a(x) + 3.0 + 0.5, 1e-14);
  const double wn[] = {-1.0, 1.0};
  EXPECT_THROW(linear_combination(wn, p), std::invalid_argument);
  const auto g = TorusPotential::grid({1.0, 2.0, 3.0, 2.0});
  const TorusPotential q[] = {a, g};
  const auto d = linear_combination(w, q);
  EXPECT_EQ(d.kind(), PotentialKind::kGrid);
  EXPECT_NEAR(d(0.25), 0.25 * a(0.25) + 2.0 * 2.0, 1e-14);
}

}  // namespace
}  // namespace lyap
