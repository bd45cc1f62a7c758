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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "lyap/rng.hpp"

namespace lyap::lines {

namespace {

constexpr double kPi = std::numbers::pi;

LineProcessSample draw(double kappa, double window, std::uint64_t seed,
                       bool with_marks) {
  if (!(window > 0.0)) throw std::invalid_argument("window must be > 0");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("intensity must be finite and >= 0");
  }
  LineProcessSample s;
  s.window = window;
  s.intensity = kappa;
  if (with_marks) s.marks.emplace();
  if (kappa == 0.0) return s;

  Philox4x32 rng(seed, 0);
  boost::random::poisson_distribution<long, double> count_dist(kappa * 2.0 * window);
  const long count = count_dist(rng);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  s.lines.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    Line l;
    l.r = window * (2.0 * unit(rng) - 1.0);
    l.theta = kPi * (1.0 - unit(rng));  // (0, pi]
    s.lines.push_back(l);
    if (with_marks) s.marks->push_back(kappa * unit(rng));
  }
  return s;
}

}  // namespace

Point Line::normal() const noexcept { return {-std::sin(theta), std::cos(theta)}; }

double Line::distance(const Point& x) const noexcept {
  const Point n = normal();
  return std::abs(x[0] * n[0] + x[1] * n[1] - r);
}

void StripeParams::validate() const {
  if (!(R > 0.0)) throw std::invalid_argument("stripe radius R must be > 0");
  if (!(c >= 0.0) || !(M >= 0.0)) throw std::invalid_argument("c and M must be >= 0");
}

LineProcessSample sample(double kappa, double window, std::uint64_t seed) {
  return draw(kappa, window, seed, false);
}

LineProcessSample sample_extended(double kappa_max, double window,
                                  std::uint64_t seed) {
  if (!(kappa_max > 0.0)) throw std::invalid_argument("kappa_max must be > 0");
  return draw(kappa_max, window, seed, true);
}

LineProcessSample thin(const LineProcessSample& s, double kappa) {
  if (!s.marks) throw std::invalid_argument("thinning needs a marked sample");
  if (s.marks->size() != s.lines.size()) {
    throw std::invalid_argument("marks and lines differ in length");
  }
  if (!(kappa >= 0.0) || kappa > s.intensity) {
    throw std::invalid_argument("kappa must lie in [0, kappa_max]");
  }
  LineProcessSample out;
  out.window = s.window;
  out.intensity = kappa;
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    if ((*s.marks)[i] < kappa) out.lines.push_back(s.lines[i]);
  }
  return out;
}

double eval_stripe(const Point& x, const LineProcessSample& s,
                   const StripeParams& p) {
  p.validate();
  if (s.window > 0.0 && std::hypot(x[0], x[1]) > s.window - 10.0 * p.R) {
    throw std::out_of_range("stripe query outside window - 10 R");
  }
  for (const Line& l : s.lines) {
    if (l.distance(x) < p.R) return p.c;
  }
  return p.c + p.M;
}

StripeField::StripeField(LineProcessSample s, StripeParams p)
    : sample_(std::move(s)), params_(p) {
  params_.validate();
  std::vector<std::size_t> order(sample_.lines.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(sample_.lines[a].r) < std::abs(sample_.lines[b].r);
  });
  for (std::size_t i : order) {
    const Point n = sample_.lines[i].normal();
    nx_.push_back(n[0]);
    ny_.push_back(n[1]);
    r_.push_back(sample_.lines[i].r);
  }
}

double StripeField::value(double x1, double x2) const {
  const double reach = std::hypot(x1, x2) + params_.R;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    // Sorted by |r|; no later line can come within R.
    if (std::abs(r_[i]) >= reach) break;
    if (std::abs(x1 * nx_[i] + x2 * ny_[i] - r_[i]) < params_.R) return params_.c;
  }
  return params_.c + params_.M;
}

double StripeField::validity_radius() const noexcept {
  return std::max(0.0, sample_.window - 10.0 * params_.R);
}

CheapPath construct_cheap_path(const LineProcessSample& s, double u, double phi) {
  if (!(phi > 0.0 && phi < kPi / 2.0)) throw std::invalid_argument("phi must lie in (0, pi/2)");
  if (!(u > 0.0)) throw std::invalid_argument("u must be > 0");
  const Line* best = nullptr;
  double best_t = 0.0;
  for (const Line& l : s.lines) {
    if (!(l.theta >= kPi - phi && l.theta < kPi)) continue;
    const double t = l.r / std::cos(l.theta);
    if (t < 0.0) continue;
    if (!best || t < best_t) {
      best = &l;
      best_t = t;
    }
  }
  if (!best) throw NoQualifyingLine();
  CheapPath path;
  path.theta = best->theta;
  path.u = u;
  path.p1 = {0.0, best_t};
  const double c = std::cos(best->theta);
  path.p2 = {u, (best->r + u * std::sin(best->theta)) / c};
  return path;
}

double bessel_j0(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_j0_first_zero() {
  double lo = 2.0;  // J0 > 0
  double hi = 3.0;  // J0 < 0
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (bessel_j0(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double lambda2() {
  const double j = bessel_j0_first_zero();
  return 0.5 * j * j;
}

double r0_for(double D) {
  if (!(D > 0.0)) throw std::invalid_argument("D must be > 0");
  return 4.0 * std::sqrt(lambda2()) / D + 1.0;
}

void write_csv(std::ostream& os, const LineProcessSample& s) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os.precision(17);
  os << (s.marks ? "r,theta,mark\n" : "r,theta\n");
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    os << s.lines[i].r << ',' << s.lines[i].theta;
    if (s.marks) os << ',' << (*s.marks)[i];
    os << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

}  // namespace lyap::lines
