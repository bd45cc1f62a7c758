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


#include "lyap/line_process.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lyap/rng.hpp"

namespace lyap::lines {
namespace {

constexpr double kPi = std::numbers::pi;

// Kolmogorov-Smirnov statistics; 1.628 is the asymptotic 1% critical value.
double ks_uniform(std::vector<double> x, double lo, double hi) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = (x[i] - lo) / (hi - lo);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

double ks_critical(std::size_t n, std::size_t m) {
  return 1.628 * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

double nearest_distance(const Point& x, const LineProcessSample& s) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& l : s.lines) d = std::min(d, l.distance(x));
  return d;
}

TEST(Sample, EmptyAtZeroIntensity) {
  const auto s = sample(0.0, 10.0, 1);
  EXPECT_TRUE(s.lines.empty());
  EXPECT_EQ(s.window, 10.0);
  EXPECT_THROW(sample(1.0, 0.0, 1), std::invalid_argument);
}

TEST(Sample, CountMeanAndMarginals) {
  const int reps = 10000;
  double sum = 0.0, sum2 = 0.0;
  std::vector<double> thetas, rs;
  for (int i = 0; i < reps; ++i) {
    const auto s = sample(0.5, 10.0, derive_seed(7, i));
    const double c = static_cast<double>(s.lines.size());
    sum += c;
    sum2 += c * c;
    for (const auto& l : s.lines) {
      ASSERT_GT(l.theta, 0.0);
      ASSERT_LE(l.theta, kPi);
      ASSERT_LE(std::abs(l.r), 10.0);
      if (thetas.size() < 10000) {
        thetas.push_back(l.theta);
        rs.push_back(l.r);
      }
    }
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  EXPECT_NEAR(mean, 10.0, 3.0 * se);
  EXPECT_LT(ks_uniform(thetas, 0.0, kPi), 1.628 / std::sqrt(thetas.size()));
  EXPECT_LT(ks_uniform(rs, -10.0, 10.0), 1.628 / std::sqrt(rs.size()));
}

TEST(Sample, DeterministicGivenSeed) {
  const auto a = sample(1.0, 8.0, 99);
  const auto b = sample(1.0, 8.0, 99);
  ASSERT_EQ(a.lines.size(), b.lines.size());
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    EXPECT_EQ(a.lines[i].r, b.lines[i].r);
    EXPECT_EQ(a.lines[i].theta, b.lines[i].theta);
  }
}

TEST(Stripe, Examples) {
  const StripeParams p{1.0, 1.0, 10.0};
  LineProcessSample empty;
  empty.window = 50.0;
  EXPECT_EQ(eval_stripe({0.0, 0.0}, empty, p), 11.0);
  LineProcessSample one;
  one.window = 50.0;
  one.lines.push_back({0.0, kPi / 2});  // the e2 axis
  EXPECT_EQ(eval_stripe({0.0, 5.0}, one, p), 1.0);
  EXPECT_EQ(eval_stripe({0.5, -3.0}, one, p), 1.0);
  EXPECT_EQ(eval_stripe({1.5, 2.0}, one, p), 11.0);
  // Hand-computed: the line theta = pi/4, r = 1 is x2 - x1 = sqrt(2).
  LineProcessSample diag;
  diag.window = 50.0;
  diag.lines.push_back({1.0, kPi / 4});
  EXPECT_NEAR(diag.lines[0].distance({0.0, std::sqrt(2.0)}), 0.0, 1e-12);
  EXPECT_NEAR(diag.lines[0].distance({0.0, 0.0}), 1.0, 1e-12);
  EXPECT_THROW(eval_stripe({45.0, 0.0}, one, p), std::out_of_range);
}

TEST(Stripe, FieldMatchesDirectEvaluation) {
  const auto s = sample(0.5, 60.0, 5);
  const StripeParams p{1.0, 2.0, 3.0};
  const StripeField field(s, p);
  EXPECT_EQ(field.validity_radius(), 40.0);
  Philox4x32 rng(3, 0);
  for (int i = 0; i < 2000; ++i) {
    const Point x{80.0 * rng.uniform01() - 40.0, 80.0 * rng.uniform01() - 40.0};
    if (std::hypot(x[0], x[1]) > 40.0) continue;
    ASSERT_EQ(field.value(x[0], x[1]), eval_stripe(x, s, p));
  }
}

TEST(Stripe, Stationarity) {
  const double kappa = 0.5, R = 1.0;
  const StripeParams p{1.0, R, 1.0};
  const std::size_t n = 4000;
  for (const Point x : {Point{5.0, 0.0}, Point{0.0, 5.0}, Point{3.0, 4.0}}) {
    std::vector<double> d0, dx, v0, vx;
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = sample(kappa, 5.0 + 10.0 * R + 10.0, derive_seed(100, i));
      const auto b = sample(kappa, 5.0 + 10.0 * R + 10.0, derive_seed(200, i));
      d0.push_back(nearest_distance({0.0, 0.0}, a));
      dx.push_back(nearest_distance(x, b));
      v0.push_back(eval_stripe({0.0, 0.0}, a, p));
      vx.push_back(eval_stripe(x, b, p));
    }
    EXPECT_LT(ks_two_sample(d0, dx), ks_critical(n, n));
    EXPECT_LT(ks_two_sample(v0, vx), ks_critical(n, n));
  }
}

TEST(Stripe, Isotropy) {
  const std::size_t n = 4000;
  for (double phi : {0.4, 1.3, 2.9}) {
    std::vector<double> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      const auto s1 = sample(0.5, 30.0, derive_seed(300, i));
      const auto s2 = sample(0.5, 30.0, derive_seed(400, i));
      a.push_back(nearest_distance({4.0, 0.0}, s1));
      b.push_back(nearest_distance({4.0 * std::cos(phi), 4.0 * std::sin(phi)}, s2));
    }
    EXPECT_LT(ks_two_sample(a, b), ks_critical(n, n));
  }
}

TEST(CheapPath, HandComputedLine) {
  LineProcessSample s;
  s.window = 10.0;
  // theta = 3pi/4 through (0, 1): r = (0, 1) . n = cos(3pi/4).
  s.lines.push_back({std::cos(3 * kPi / 4), 3 * kPi / 4});
  const auto path = construct_cheap_path(s, 4.0, kPi / 3);
  EXPECT_NEAR(path.p1[0], 0.0, 1e-12);
  EXPECT_NEAR(path.p1[1], 1.0, 1e-12);
  EXPECT_NEAR(path.p2[0], 4.0, 1e-12);
  EXPECT_NEAR(path.p2[1], 1.0 - 4.0, 1e-12);
  EXPECT_NEAR(std::hypot(path.p2[0] - path.p1[0], path.p2[1] - path.p1[1]),
              4.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.lines[0].distance(path.p2), 0.0, 1e-12);
}

TEST(CheapPath, PicksLowestCrossing) {
  LineProcessSample s;
  s.window = 10.0;
  const double th = 5 * kPi / 6;
  s.lines.push_back({3.0 * std::cos(th), th});          // crosses at 3
  s.lines.push_back({1.5 * std::cos(th), th});          // crosses at 1.5
  s.lines.push_back({-0.5 * std::cos(th), th});         // crosses below 0
  s.lines.push_back({0.2 * std::cos(0.3), 0.3});        // wrong angle
  s.lines.push_back({-1.0, kPi});                       // theta = pi excluded
  const auto path = construct_cheap_path(s, 5.0, kPi / 4);
  EXPECT_NEAR(path.p1[1], 1.5, 1e-12);
  EXPECT_EQ(path.theta, th);
}

TEST(CheapPath, EmptyAndErrors) {
  LineProcessSample s;
  s.window = 5.0;
  EXPECT_THROW(construct_cheap_path(s, 4.0, 0.5), NoQualifyingLine);
  EXPECT_THROW(construct_cheap_path(s, 4.0, 2.0), std::invalid_argument);
}

TEST(CheapPath, RandomSingleLines) {
  Philox4x32 rng(11, 0);
  const double phi = kPi / 5;
  for (int i = 0; i < 1000; ++i) {
    LineProcessSample s;
    s.window = 10.0;
    const Line l{20.0 * rng.uniform01() - 10.0, kPi * (1.0 - rng.uniform01())};
    s.lines.push_back(l);
    const double u = 1.0 + 9.0 * rng.uniform01();
    const bool qualifies = l.theta >= kPi - phi && l.theta < kPi && l.r / std::cos(l.theta) >= 0.0;
    if (!qualifies) {
      EXPECT_THROW(construct_cheap_path(s, u, phi), NoQualifyingLine);
      continue;
    }
    const auto path = construct_cheap_path(s, u, phi);
    const double len = std::hypot(path.p2[0] - path.p1[0], path.p2[1] - path.p1[1]);
    ASSERT_NEAR(len, u / std::cos(kPi - path.theta), 1e-9 * std::max(1.0, len));
    ASSERT_NEAR(l.distance(path.p1), 0.0, 1e-9);
    ASSERT_NEAR(l.distance(path.p2), 0.0, 1e-9 * std::max(1.0, len));
  }
}

TEST(Lambda2, BesselZeroAndEigenvalue) {
  const double j = bessel_j0_first_zero();
  EXPECT_NEAR(j, 2.404825557695773, 1e-12);
  EXPECT_LT(std::abs(bessel_j0(j)), 1e-9);
  EXPECT_NEAR(bessel_j0(j), std::cyl_bessel_j(0.0, j), 1e-12);
  for (double x : {0.0, 0.5, 1.7, 4.2, 7.9}) {
    EXPECT_NEAR(bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-12);
  }
  EXPECT_NEAR(lambda2(), 2.8915929814733916, 1e-10);
  EXPECT_NEAR(2.0 * lambda2(), j * j, 1e-12);
}

TEST(R0, Examples) {
  const double l2 = lambda2();
  EXPECT_NEAR(r0_for(4.0 * std::sqrt(l2)), 2.0, 1e-14);
  EXPECT_NEAR(r0_for(0.5), 1.0 + 8.0 * std::sqrt(l2), 1e-12);
  EXPECT_NEAR(r0_for(0.5), 14.603, 1e-3);
  EXPECT_NEAR(r0_for(1e12), 1.0, 1e-10);
  EXPECT_THROW(r0_for(0.0), std::invalid_argument);
  EXPECT_THROW(r0_for(-1.0), std::invalid_argument);
}

TEST(Thinning, ExtendedSampleAndMarks) {
  const int reps = 4000;
  double sum = 0.0;
  std::vector<double> marks;
  for (int i = 0; i < reps; ++i) {
    const auto s = sample_extended(1.0, 5.0, derive_seed(9, i));
    ASSERT_TRUE(s.marks.has_value());
    ASSERT_EQ(s.marks->size(), s.lines.size());
    sum += s.lines.size();
    for (double m : *s.marks) {
      if (marks.size() < 10000) marks.push_back(m);
    }
  }
  EXPECT_NEAR(sum / reps, 10.0, 3.0 * std::sqrt(10.0 / reps));
  EXPECT_LT(ks_uniform(marks, 0.0, 1.0), 1.628 / std::sqrt(marks.size()));
}

TEST(Thinning, NestingAndLimits) {
  const auto s = sample_extended(2.0, 10.0, 77);
  EXPECT_TRUE(thin(s, 0.0).lines.empty());
  EXPECT_EQ(thin(s, 2.0).lines.size(), s.lines.size());
  const auto a = thin(s, 0.5);
  const auto b = thin(s, 1.2);
  EXPECT_LE(a.lines.size(), b.lines.size());
  for (const auto& l : a.lines) {
    const bool found = std::any_of(b.lines.begin(), b.lines.end(), [&](const Line& m) {
      return m.r == l.r && m.theta == l.theta;
    });
    ASSERT_TRUE(found);
  }
  EXPECT_THROW(thin(sample(1.0, 5.0, 1), 0.5), std::invalid_argument);
  EXPECT_THROW(thin(s, 2.5), std::invalid_argument);
}

TEST(Thinning, PushForwardCounts) {
  const int reps = 6000;
  double ct = 0.0, ct2 = 0.0, cd = 0.0, cd2 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double a = thin(sample_extended(1.0, 10.0, derive_seed(1, i)), 0.4).lines.size();
    const double b = sample(0.4, 10.0, derive_seed(2, i)).lines.size();
    ct += a;
    ct2 += a * a;
    cd += b;
    cd2 += b * b;
  }
  const double ma = ct / reps, mb = cd / reps;
  const double se = std::sqrt((ct2 / reps - ma * ma + cd2 / reps - mb * mb) / reps);
  EXPECT_NEAR(ma, mb, 3.0 * se);
}

TEST(Thinning, OriginInsideSomeStripe) {
  const double kappa = 0.5, R = 1.0;
  const int reps = 20000;
  const StripeParams p{1.0, R, 1.0};
  double hits = 0.0;
  for (int i = 0; i < reps; ++i) {
    const auto s = thin(sample_extended(1.0, 10.0 * R + 1.0, derive_seed(5, i)), kappa);
    hits += std::abs(2.0 - eval_stripe({0.0, 0.0}, s, p));
  }
  const double prob = 1.0 - std::exp(-2.0 * kappa * R);
  const double mean = hits / reps;
  EXPECT_NEAR(mean, prob, 3.0 * std::sqrt(prob * (1 - prob) / reps));
}

TEST(Csv, HeaderAndRows) {
  const auto s = sample_extended(0.5, 4.0, 3);
  std::ostringstream os;
  write_csv(os, s);
  const std::string out = os.str();
  EXPECT_EQ(out.rfind("r,theta,mark\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(out.begin(), out.end(), '\n')), s.lines.size() + 1);
  std::ostringstream plain;
  write_csv(plain, sample(0.5, 4.0, 3));
  EXPECT_EQ(plain.str().rfind("r,theta\n", 0), 0u);
}

}  // namespace
}  // namespace lyap::lines
