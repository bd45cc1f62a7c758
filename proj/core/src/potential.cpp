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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lyap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Samples used to reject trig polynomials that dip below zero when the
// analytic bound is inconclusive.
constexpr std::size_t kNonnegCheckNodes = 4096;

std::size_t grid_index(double x, std::size_t n, double* frac) {
  const double s = wrap_unit(x) * static_cast<double>(n);
  double cell = std::floor(s);
  *frac = s - cell;
  auto i = static_cast<std::size_t>(cell);
  if (i >= n) {  // s rounded up to n
    i = 0;
    *frac = 0.0;
  }
  return i;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

double wrap_unit(double x) noexcept {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

std::size_t TrigSeries::modes() const noexcept {
  return std::max(cos_coeffs.size(), sin_coeffs.size());
}

double TrigSeries::operator()(double x) const noexcept {
  const std::size_t k_max = modes();
  double v = a0;
  if (k_max == 0) return v;
  // Angle-addition recurrence from one sincos evaluation.
  const double theta = kTwoPi * wrap_unit(x);
  const double c1 = std::cos(theta);
  const double s1 = std::sin(theta);
  double ck = c1;
  double sk = s1;
  for (std::size_t k = 0; k < k_max; ++k) {
    if (k < cos_coeffs.size()) v += cos_coeffs[k] * ck;
    if (k < sin_coeffs.size()) v += sin_coeffs[k] * sk;
    const double c_next = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = c_next;
  }
  return v;
}

double TrigSeries::derivative(double x) const noexcept {
  const std::size_t k_max = modes();
  if (k_max == 0) return 0.0;
  const double theta = kTwoPi * wrap_unit(x);
  const double c1 = std::cos(theta);
  const double s1 = std::sin(theta);
  double ck = c1;
  double sk = s1;
  double d = 0.0;
  for (std::size_t k = 0; k < k_max; ++k) {
    const double w = kTwoPi * static_cast<double>(k + 1);
    if (k < cos_coeffs.size()) d -= w * cos_coeffs[k] * sk;
    if (k < sin_coeffs.size()) d += w * sin_coeffs[k] * ck;
    const double c_next = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = c_next;
  }
  return d;
}

double TrigSeries::lower_bound() const noexcept {
  double s = a0;
  for (double c : cos_coeffs) s -= std::abs(c);
  for (double c : sin_coeffs) s -= std::abs(c);
  return s;
}

double TrigSeries::upper_bound() const noexcept {
  double s = a0;
  for (double c : cos_coeffs) s += std::abs(c);
  for (double c : sin_coeffs) s += std::abs(c);
  return s;
}

TorusPotential TorusPotential::constant(double c) {
  require_finite(c, "constant potential");
  if (c < 0.0) throw std::invalid_argument("potential must be nonnegative");
  TorusPotential v;
  v.kind_ = PotentialKind::kConstant;
  v.series_.a0 = c;
  v.v_min_ = c;
  v.v_max_ = c;
  return v;
}

TorusPotential TorusPotential::trig(TrigSeries series) {
  require_finite(series.a0, "trig coefficient");
  for (double c : series.cos_coeffs) require_finite(c, "trig coefficient");
  for (double c : series.sin_coeffs) require_finite(c, "trig coefficient");
  TorusPotential v;
  v.kind_ = PotentialKind::kTrig;
  v.series_ = std::move(series);
  v.finalize_trig_bounds();
  return v;
}

TorusPotential TorusPotential::trig(double a0, std::vector<double> cos_coeffs,
                                    std::vector<double> sin_coeffs) {
  return trig(TrigSeries{a0, std::move(cos_coeffs), std::move(sin_coeffs)});
}

void TorusPotential::finalize_trig_bounds() {
  const double lo = series_.lower_bound();
  if (lo < 0.0) {
    for (std::size_t i = 0; i < kNonnegCheckNodes; ++i) {
      const double x = static_cast<double>(i) / kNonnegCheckNodes;
      if (series_(x) < 0.0) {
        throw std::invalid_argument("trigonometric potential takes negative values");
      }
    }
  }
  v_min_ = std::max(0.0, lo);
  v_max_ = series_.upper_bound();
}

TorusPotential TorusPotential::grid(std::vector<double> samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("grid potential needs at least 2 samples");
  }
  for (double s : samples) require_finite(s, "grid sample");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  return grid(samples, *lo, *hi);
}

TorusPotential TorusPotential::grid(std::vector<double> samples, double v_min,
                                    double v_max) {
  if (samples.size() < 2) {
    throw std::invalid_argument("grid potential needs at least 2 samples");
  }
  for (double s : samples) require_finite(s, "grid sample");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (v_min < 0.0) throw std::invalid_argument("potential must be nonnegative");
  if (v_min > *lo || v_max < *hi) {
    throw std::invalid_argument("grid bounds do not enclose the samples");
  }
  TorusPotential v;
  v.kind_ = PotentialKind::kGrid;
  v.samples_ = std::move(samples);
  v.v_min_ = v_min;
  v.v_max_ = v_max;
  return v;
}

double TorusPotential::operator()(double x) const noexcept {
  switch (kind_) {
    case PotentialKind::kConstant:
      return series_.a0;
    case PotentialKind::kTrig:
      return series_(x);
    case PotentialKind::kGrid: {
      const std::size_t n = samples_.size();
      double frac = 0.0;
      const std::size_t i = grid_index(x, n, &frac);
      const std::size_t j = (i + 1 == n) ? 0 : i + 1;
      return samples_[i] + frac * (samples_[j] - samples_[i]);
    }
  }
  return 0.0;
}

double TorusPotential::derivative(double x) const noexcept {
  switch (kind_) {
    case PotentialKind::kConstant:
      return 0.0;
    case PotentialKind::kTrig:
      return series_.derivative(x);
    case PotentialKind::kGrid: {
      const double h = 1.0 / static_cast<double>(samples_.size());
      return ((*this)(x + h) - (*this)(x - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

double TorusPotential::mean() const noexcept {
  if (kind_ != PotentialKind::kGrid) return series_.a0;
  // Periodic trapezoid of the linear interpolant = node average.
  double s = 0.0;
  for (double v : samples_) s += v;
  return s / static_cast<double>(samples_.size());
}

bool TorusPotential::is_constant() const noexcept {
  switch (kind_) {
    case PotentialKind::kConstant:
      return true;
    case PotentialKind::kTrig:
      return std::all_of(series_.cos_coeffs.begin(), series_.cos_coeffs.end(),
                         [](double c) { return c == 0.0; }) &&
             std::all_of(series_.sin_coeffs.begin(), series_.sin_coeffs.end(),
                         [](double c) { return c == 0.0; });
    case PotentialKind::kGrid:
      return std::all_of(samples_.begin(), samples_.end(),
                         [&](double s) { return s == samples_.front(); });
  }
  return false;
}

std::vector<double> TorusPotential::sample_nodes(std::size_t n) const {
  std::vector<double> out(n);
  if (kind_ == PotentialKind::kGrid && n == samples_.size()) {
    out = samples_;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (*this)(static_cast<double>(i) / static_cast<double>(n));
  }
  return out;
}

TorusPotential TorusPotential::scaled(double factor) const {
  const double w[] = {factor};
  const TorusPotential v[] = {*this};
  return linear_combination(w, v, 0.0);
}

TorusPotential TorusPotential::shifted(double offset) const {
  const double w[] = {1.0};
  const TorusPotential v[] = {*this};
  return linear_combination(w, v, offset);
}

TorusPotential TorusPotential::plus(const TrigSeries& s) const {
  if (kind_ == PotentialKind::kGrid) {
    std::vector<double> nodes = samples_;
    const double n = static_cast<double>(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      nodes[i] += s(static_cast<double>(i) / n);
    }
    for (double x : nodes) {
      if (x < 0.0) throw std::invalid_argument("perturbed potential is negative");
    }
    return grid(std::move(nodes));
  }
  TrigSeries out = series_;
  out.a0 += s.a0;
  out.cos_coeffs.resize(std::max(out.cos_coeffs.size(), s.cos_coeffs.size()), 0.0);
  out.sin_coeffs.resize(std::max(out.sin_coeffs.size(), s.sin_coeffs.size()), 0.0);
  for (std::size_t k = 0; k < s.cos_coeffs.size(); ++k) out.cos_coeffs[k] += s.cos_coeffs[k];
  for (std::size_t k = 0; k < s.sin_coeffs.size(); ++k) out.sin_coeffs[k] += s.sin_coeffs[k];
  return trig(std::move(out));
}

TorusPotential linear_combination(std::span<const double> weights,
                                  std::span<const TorusPotential> potentials,
                                  double offset) {
  if (weights.size() != potentials.size() || potentials.empty()) {
    throw std::invalid_argument("linear_combination: size mismatch");
  }
  for (double w : weights) {
    require_finite(w, "weight");
    if (w < 0.0) throw std::invalid_argument("linear_combination: negative weight");
  }
  require_finite(offset, "offset");

  std::size_t grid_n = 0;
  bool all_constant = true;
  for (const auto& v : potentials) {
    if (v.kind() == PotentialKind::kGrid) {
      if (grid_n != 0 && grid_n != v.samples().size()) {
        throw std::invalid_argument("linear_combination: grid sizes differ");
      }
      grid_n = v.samples().size();
    }
    if (v.kind() != PotentialKind::kConstant) all_constant = false;
  }

  if (grid_n != 0) {
    std::vector<double> nodes(grid_n, offset);
    for (std::size_t t = 0; t < potentials.size(); ++t) {
      const auto vals = potentials[t].sample_nodes(grid_n);
      for (std::size_t i = 0; i < grid_n; ++i) nodes[i] += weights[t] * vals[i];
    }
    for (double x : nodes) {
      if (x < 0.0) throw std::invalid_argument("combined potential is negative");
    }
    return TorusPotential::grid(std::move(nodes));
  }

  TrigSeries s;
  s.a0 = offset;
  for (std::size_t t = 0; t < potentials.size(); ++t) {
    const auto& src = potentials[t].series();
    s.a0 += weights[t] * src.a0;
    if (s.cos_coeffs.size() < src.cos_coeffs.size()) s.cos_coeffs.resize(src.cos_coeffs.size(), 0.0);
    if (s.sin_coeffs.size() < src.sin_coeffs.size()) s.sin_coeffs.resize(src.sin_coeffs.size(), 0.0);
    for (std::size_t k = 0; k < src.cos_coeffs.size(); ++k) s.cos_coeffs[k] += weights[t] * src.cos_coeffs[k];
    for (std::size_t k = 0; k < src.sin_coeffs.size(); ++k) s.sin_coeffs[k] += weights[t] * src.sin_coeffs[k];
  }
  if (all_constant) return TorusPotential::constant(s.a0);
  return TorusPotential::trig(std::move(s));
}

double eval_realization(const TorusPotential& v, double omega, double x) {
  return v(omega + x);
}

double grad_realization(const TorusPotential& v, double omega, double x) {
  return v.derivative(omega + x);
}

double mean(const TorusPotential& v) { return v.mean(); }

TorusPotential symmetrize(const TorusPotential& v, unsigned m) {
  if (m == 0) throw std::invalid_argument("symmetrize: m must be >= 1");
  if (m == 1) return v;
  switch (v.kind()) {
    case PotentialKind::kConstant:
      return v;
    case PotentialKind::kTrig: {
      // (1/m) sum_j e^{2 pi i k (x + j/m)} vanishes unless m | k.
      TrigSeries s;
      s.a0 = v.series().a0;
      s.cos_coeffs.assign(v.series().cos_coeffs.size(), 0.0);
      s.sin_coeffs.assign(v.series().sin_coeffs.size(), 0.0);
      for (std::size_t k = 0; k < s.cos_coeffs.size(); ++k) {
        if ((k + 1) % m == 0) s.cos_coeffs[k] = v.series().cos_coeffs[k];
      }
      for (std::size_t k = 0; k < s.sin_coeffs.size(); ++k) {
        if ((k + 1) % m == 0) s.sin_coeffs[k] = v.series().sin_coeffs[k];
      }
      return TorusPotential::trig(std::move(s));
    }
    case PotentialKind::kGrid: {
      const auto src = v.samples();
      const std::size_t n = src.size();
      std::vector<double> nodes(n, 0.0);
      if (n % m == 0) {
        const std::size_t stride = n / m;
        for (std::size_t i = 0; i < n; ++i) {
          double s = 0.0;
          for (std::size_t j = 0; j < m; ++j) s += src[(i + j * stride) % n];
          nodes[i] = s / static_cast<double>(m);
        }
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          const double x = static_cast<double>(i) / static_cast<double>(n);
          double s = 0.0;
          for (std::size_t j = 0; j < m; ++j) {
            s += v(x + static_cast<double>(j) / static_cast<double>(m));
          }
          nodes[i] = s / static_cast<double>(m);
        }
      }
      return TorusPotential::grid(std::move(nodes));
    }
  }
  return v;
}

}  // namespace lyap
