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


#ifndef LYAP_LINE_PROCESS_HPP_
#define LYAP_LINE_PROCESS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "lyap/field.hpp"

namespace lyap::lines {

using Point = std::array<double, 2>;

/// The line {p : p . n(theta) = r} with unit normal n = (-sin theta, cos theta),
/// theta in (0, pi].
struct Line {
  double r = 0.0;
  double theta = 0.0;

  Point normal() const noexcept;
  double distance(const Point& x) const noexcept;
};

struct LineProcessSample {
  std::vector<Line> lines;
  /// Lines with |r| <= window are represented.
  double window = 0.0;
  double intensity = 0.0;
  /// Thinning marks, one per line, when sampled on the extended space.
  std::optional<std::vector<double>> marks;
};

struct StripeParams {
  double c = 1.0;
  double R = 1.0;
  double M = 1.0;

  void validate() const;
};

struct CheapPath {
  Point p1{};
  Point p2{};
  double theta = 0.0;
  double u = 0.0;
};

class NoQualifyingLine : public std::runtime_error {
 public:
  NoQualifyingLine() : std::runtime_error("no line with the required angle crosses the positive e2 axis") {}
};

/// Poisson(2 kappa L) lines with r ~ U[-L, L], theta ~ U(0, pi].
LineProcessSample sample(double kappa, double window, std::uint64_t seed);

/// Marked lines at intensity kappa_max with marks s ~ U[0, kappa_max].
LineProcessSample sample_extended(double kappa_max, double window,
                                  std::uint64_t seed);

/// Keeps the lines with mark < kappa. Rejects samples without marks and
/// kappa above the sampled mark range.
LineProcessSample thin(const LineProcessSample& s, double kappa);

/// c inside distance R of some line, c + M elsewhere. Throws
/// std::out_of_range when |x| > window - 10 R for a nonempty window.
double eval_stripe(const Point& x, const LineProcessSample& s,
                   const StripeParams& p);

/// Stripe potential as a planar field; paths are truncated beyond
/// window - 10 R.
class StripeField final : public Field {
 public:
  StripeField(LineProcessSample s, StripeParams p);
  int dimension() const noexcept override { return 2; }
  double value(double x1, double x2) const override;
  double validity_radius() const noexcept override;

 private:
  LineProcessSample sample_;
  StripeParams params_;
  std::vector<double> nx_, ny_, r_;
};

/// Lowest crossing of the positive e2 axis among lines with theta in
/// [pi - phi, pi), followed to the vertical line x1 = u.
CheapPath construct_cheap_path(const LineProcessSample& s, double u, double phi);

/// J0 by its power series (accurate for |x| <= 8).
double bessel_j0(double x);
/// First positive zero of J0, by bisection.
double bessel_j0_first_zero();
/// Principal Dirichlet eigenvalue of -(1/2) Laplacian on the unit disk.
double lambda2();
/// 4 sqrt(lambda2) / D + 1; D must be > 0.
double r0_for(double D);

/// CSV with header "r,theta" or "r,theta,mark".
void write_csv(std::ostream& os, const LineProcessSample& s);

}  // namespace lyap::lines

#endif  // LYAP_LINE_PROCESS_HPP_
