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

#include "lyap/varform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lyap {

namespace {

constexpr std::size_t kQuadratureNodes = 4096;
constexpr std::size_t kMinGrid = 8;

double grid_mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Solves a x_{j-1} + b x_j + a x_{j+1} = r_j with cyclic wrap, |b| > 2|a|,
// in place on r (Sherman-Morrison around the Thomas algorithm).
void solve_cyclic_tridiagonal(double a, double b, std::vector<double>& r,
                              std::vector<double>& scratch) {
  const std::size_t n = r.size();
  if (n == 1) {
    r[0] /= (b + 2.0 * a);
    return;
  }
  if (n == 2) {
    const double off = 2.0 * a;
    const double det = b * b - off * off;
    const double r0 = r[0];
    r[0] = (b * r0 - off * r[1]) / det;
    r[1] = (b * r[1] - off * r0) / det;
    return;
  }
  const double gamma = -b;
  // Modified diagonal: first and last entries absorb the corner terms.
  auto diag = [&](std::size_t i) {
    if (i == 0) return b - gamma;
    if (i == n - 1) return b - a * a / gamma;
    return b;
  };
  auto thomas = [&](std::vector<double>& rhs) {
    scratch.assign(n, 0.0);
    double beta = diag(0);
    rhs[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
      scratch[i] = a / beta;
      beta = diag(i) - a * scratch[i];
      rhs[i] = (rhs[i] - a * rhs[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i + 1] * rhs[i + 1];
  };
  std::vector<double> z(n, 0.0);
  z[0] = gamma;
  z[n - 1] = a;
  thomas(r);
  thomas(z);
  const double fact =
      (r[0] + a * r[n - 1] / gamma) / (1.0 + z[0] + a * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) r[i] -= fact * z[i];
}

// Applies (alpha I + beta (-D^2))^{-1} where D is the periodic central
// difference with spacing h. -D^2 couples i with i +- 2 only, so the system
// splits into cyclic tridiagonal systems along the orbits of i -> i + 2.
class SobolevPreconditioner {
 public:
  explicit SobolevPreconditioner(std::size_t n) : n_(n) {}

  void apply(double alpha, double beta, std::span<double> x) {
    const double h = 1.0 / static_cast<double>(n_);
    const double off = -beta / (4.0 * h * h);
    const double diag = alpha - 2.0 * off;
    const std::size_t cycles = (n_ % 2 == 0) ? 2 : 1;
    const std::size_t len = n_ / cycles;
    for (std::size_t c = 0; c < cycles; ++c) {
      buf_.resize(len);
      std::size_t idx = c;
      for (std::size_t j = 0; j < len; ++j) {
        buf_[j] = x[idx];
        idx = (idx + 2) % n_;
      }
      solve_cyclic_tridiagonal(off, diag, buf_, scratch_);
      idx = c;
      for (std::size_t j = 0; j < len; ++j) {
        x[idx] = buf_[j];
        idx = (idx + 2) % n_;
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<double> buf_, scratch_;
};

struct DescentOutcome {
  std::vector<double> g;
  double value = 0.0;
  double energy = 0.0;
  double inverse_mean = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

DescentOutcome descend(const LogDensityObjective& obj, std::vector<double> g,
                       int max_iter, double tol) {
  const std::size_t n = obj.size();
  SobolevPreconditioner precond(n);
  std::vector<double> grad(n), dir(n), trial(n);

  DescentOutcome out;
  double value = obj.value_and_gradient(g, grad);
  double energy = obj.last_energy();
  double inv_mean = obj.last_inverse_mean();
  out.trace.push_back(value);

  constexpr double kArmijo = 1e-4;
  for (int it = 0; it < max_iter; ++it) {
    // L2(torus) gradient is n * d/dg; precondition with the Hessian model at
    // the uniform density.
    const double alpha = 4.0 * std::max(energy, 1e-12);
    const double beta = 0.5 * std::max(inv_mean, 1.0);
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) dir[i] = -static_cast<double>(n) * grad[i];
    precond.apply(alpha, beta, dir);
    for (std::size_t i = 0; i < n; ++i) slope += grad[i] * dir[i];
    if (!(slope < 0.0)) {
      out.converged = true;
      break;
    }

    double step = 1.0;
    double trial_value = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = g[i] + step * dir[i];
      trial_value = obj.value(trial);
      if (std::isfinite(trial_value) &&
          trial_value <= value + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || !(trial_value < value)) {
      // No representable decrease left along the descent direction.
      out.converged = true;
      break;
    }
    const double rel_decrease = (value - trial_value) / std::max(value, 1e-300);
    g.swap(trial);
    value = obj.value_and_gradient(g, grad);
    energy = obj.last_energy();
    inv_mean = obj.last_inverse_mean();
    out.trace.push_back(value);
    out.iterations = it + 1;
    if (rel_decrease < tol) {
      out.converged = true;
      break;
    }
  }
  out.g = std::move(g);
  out.value = value;
  out.energy = energy;
  out.inverse_mean = inv_mean;
  return out;
}

std::vector<double> density_from_log(std::span<const double> g) {
  const double gmax = *std::max_element(g.begin(), g.end());
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(g[i] - gmax);
  const double m = grid_mean(f);
  for (double& x : f) x /= m;
  return f;
}

VariationalResult solve_on_grid(const TorusPotential& v, double y,
                                const SolverOptions& opts, std::size_t n) {
  if (n < kMinGrid) throw std::invalid_argument("grid_N must be at least 8");
  if (!std::isfinite(y)) throw std::invalid_argument("y must be finite");
  const std::vector<double> nodes = v.sample_nodes(n);
  const LogDensityObjective product(nodes, false);

  DescentOutcome best = descend(product, std::vector<double>(n, 0.0),
                                opts.max_iter, opts.tol);
  std::optional<double> restart_p;

  if (opts.restarts && v.v_min() > 0.0 && !opts.p_scan.empty()) {
    std::vector<double> log_v(n);
    for (std::size_t i = 0; i < n; ++i) log_v[i] = std::log(nodes[i]);
    double best_p = 0.0;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> g(n);
    for (double p : opts.p_scan) {
      for (std::size_t i = 0; i < n; ++i) g[i] = -p * log_v[i];
      const double val = product.value(g);
      if (val < best_val) {
        best_val = val;
        best_p = p;
      }
    }
    for (std::size_t i = 0; i < n; ++i) g[i] = -best_p * log_v[i];
    DescentOutcome alt = descend(product, g, opts.max_iter, opts.tol);
    if (alt.value < best.value) {
      best = std::move(alt);
      restart_p = best_p;
    }
  }

  // Ground-state energy: minimize the energy alone, from the uniform density
  // and from the product minimizer.
  const LogDensityObjective energy_obj(nodes, true);
  DescentOutcome ground = descend(energy_obj, std::vector<double>(n, 0.0),
                                  opts.max_iter, opts.tol);
  DescentOutcome ground_alt = descend(energy_obj, best.g, opts.max_iter, opts.tol);
  const double sigma = std::min(ground.value, ground_alt.value);

  VariationalResult r;
  r.grid_N = n;
  r.y = y;
  r.K_value = best.energy;
  r.B_value = 0.5 * y * y * best.inverse_mean;
  r.gamma = 2.0 * std::sqrt(r.K_value * r.B_value);
  r.sigma_s0 = std::min(sigma, best.energy);
  r.minimizer = DensityField(density_from_log(best.g));
  r.iterations = best.iterations;
  r.converged = best.converged;
  r.restart_p = restart_p;
  r.objective_trace = std::move(best.trace);
  return r;
}

template <class F>
double quadrature(F&& fn) {
  return torus_average(std::forward<F>(fn), kQuadratureNodes);
}

}  // namespace

DensityField::DensityField(std::vector<double> values)
    : values_(std::move(values)), floor_(0.0) {
  if (values_.empty()) throw std::invalid_argument("density must be nonempty");
  floor_ = *std::min_element(values_.begin(), values_.end());
  if (!(floor_ > 0.0)) throw std::invalid_argument("density must be positive");
  if (std::abs(grid_mean(values_) - 1.0) > 1e-12) {
    throw std::invalid_argument("density must have grid mean 1");
  }
}

DensityField::DensityField(std::vector<double> values, double floor)
    : DensityField(std::move(values)) {
  if (!(floor > 0.0) || floor > floor_) {
    throw std::invalid_argument("density floor must be positive and below min value");
  }
  floor_ = floor;
}

DensityField DensityField::normalized(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("density must be nonempty");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("density values must be positive and finite");
    }
  }
  const double m = grid_mean(values);
  for (double& v : values) v /= m;
  // One correction pass absorbs the rounding of the division.
  const double m2 = grid_mean(values);
  for (double& v : values) v /= m2;
  return DensityField(std::move(values));
}

DensityField DensityField::uniform(std::size_t n) {
  return DensityField(std::vector<double>(n, 1.0));
}

double energy_functional(const DensityField& f, std::span<const double> v_nodes) {
  const std::size_t n = f.size();
  if (v_nodes.size() != n) throw std::invalid_argument("potential/density size mismatch");
  const double inv_2h = 0.5 * static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (f[(i + 1) % n] - f[(i + n - 1) % n]) * inv_2h;
    s += d * d / (8.0 * f[i]) + v_nodes[i] * f[i];
  }
  return s / static_cast<double>(n);
}

double energy_functional(const DensityField& f, const TorusPotential& v) {
  const auto nodes = v.sample_nodes(f.size());
  return energy_functional(f, nodes);
}

double transport_functional(const DensityField& f, double y) {
  double s = 0.0;
  for (double x : f.values()) s += 1.0 / x;
  return 0.5 * y * y * s / static_cast<double>(f.size());
}

double corrector_functional(const DensityField& f, double eta) {
  double s = 0.0;
  for (double x : f.values()) s += 1.0 / x;
  return eta * eta * static_cast<double>(f.size()) / s;
}

LogDensityObjective::LogDensityObjective(std::vector<double> v_nodes,
                                         bool energy_only)
    : v_nodes_(std::move(v_nodes)), energy_only_(energy_only) {
  if (v_nodes_.size() < 3) throw std::invalid_argument("objective needs >= 3 nodes");
}

double LogDensityObjective::value(std::span<const double> g) const {
  const std::size_t n = v_nodes_.size();
  f_ = density_from_log(g);
  const double inv_2h = 0.5 * static_cast<double>(n);
  double k = 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (f_[(i + 1) % n] - f_[(i + n - 1) % n]) * inv_2h;
    k += d * d / (8.0 * f_[i]) + v_nodes_[i] * f_[i];
    m += 1.0 / f_[i];
  }
  last_k_ = k / static_cast<double>(n);
  last_m_ = m / static_cast<double>(n);
  return energy_only_ ? last_k_ : 2.0 * last_k_ * last_m_;
}

double LogDensityObjective::value_and_gradient(std::span<const double> g,
                                               std::span<double> grad) const {
  const std::size_t n = v_nodes_.size();
  const double value_out = value(g);
  const double inv_n = 1.0 / static_cast<double>(n);
  const double inv_2h = 0.5 * static_cast<double>(n);
  d_.resize(n);
  gf_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d_[i] = (f_[(i + 1) % n] - f_[(i + n - 1) % n]) * inv_2h;
  }
  // d/df_j of K and of M = E[1/f].
  const double wk = energy_only_ ? 1.0 : 2.0 * last_m_;
  const double wm = energy_only_ ? 0.0 : 2.0 * last_k_;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jm = (j + n - 1) % n;
    const std::size_t jp = (j + 1) % n;
    const double dk = inv_n * (v_nodes_[j] - d_[j] * d_[j] / (8.0 * f_[j] * f_[j]) +
                               (d_[jm] / (4.0 * f_[jm]) - d_[jp] / (4.0 * f_[jp])) * inv_2h);
    const double dm = -inv_n / (f_[j] * f_[j]);
    gf_[j] = wk * dk + wm * dm;
  }
  // Chain rule through f = exp(g) / mean(exp(g)).
  double weighted = 0.0;
  for (std::size_t j = 0; j < n; ++j) weighted += gf_[j] * f_[j];
  weighted *= inv_n;
  for (std::size_t k = 0; k < n; ++k) grad[k] = f_[k] * (gf_[k] - weighted);
  return value_out;
}

VariationalResult variational_exponent(const TorusPotential& v, double y,
                                       const SolverOptions& opts) {
  VariationalResult r = solve_on_grid(v, y, opts, opts.grid_N);
  if (opts.refine) {
    r.gamma_refined = solve_on_grid(v, y, opts, 2 * opts.grid_N).gamma;
  }
  return r;
}

double power_family_bound(const TorusPotential& v, double y, double p) {
  if (!(v.v_min() > 0.0)) {
    throw std::domain_error("power family bound needs v_min > 0");
  }
  if (!(p >= 0.0)) throw std::invalid_argument("p must be >= 0");
  const double grad_term = quadrature([&](double x) {
    const double val = v(x);
    const double d = v.derivative(x);
    return p * p * d * d / (8.0 * std::pow(val, p + 2.0)) + std::pow(val, 1.0 - p);
  });
  const double moment = quadrature([&](double x) { return std::pow(v(x), p); });
  return std::sqrt(2.0 * y * y * grad_term * moment);
}

double cov_v_log_v(const TorusPotential& v) {
  if (!(v.v_min() > 0.0)) {
    throw std::domain_error("Cov(V, ln V) needs v_min > 0");
  }
  const double e_v = quadrature([&](double x) { return v(x); });
  const double e_logv = quadrature([&](double x) { return std::log(v(x)); });
  // Centered form: exactly zero for constant potentials.
  return quadrature([&](double x) {
    const double val = v(x);
    return (val - e_v) * (std::log(val) - e_logv);
  });
}

}  // namespace lyap
