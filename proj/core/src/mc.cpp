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


#include "lyap/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>

#include "lyap/rng.hpp"
#include "lyap/stats.hpp"

namespace lyap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRescaleBelow = -600.0;

enum Outcome : std::uint8_t { kHit = 0, kTruncated = 1, kExited = 2 };

struct Geometry {
  int dim = 1;
  double d1 = 1.0;
  double d2 = 0.0;
  double radius = 1.0;
  std::span<const double> u;
  double stripe = std::numeric_limits<double>::infinity();
};

// Follows one discretized path and records, per target, the log-weight at
// the first step that lands inside the target ball.
class PathTracker {
 public:
  PathTracker(const Geometry& g, double* logw, std::uint8_t* outcome)
      : g_(g), logw_(logw), outcome_(outcome), remaining_(g.u.size()) {
    std::fill(outcome_, outcome_ + g_.u.size(), kTruncated);
    reached_.assign(g_.u.size(), 0);
  }

  bool active() const noexcept { return remaining_ > 0; }
  double x1() const noexcept { return x1_; }
  double x2() const noexcept { return x2_; }

  void advance(double v, double dx1, double dx2, double dt) {
    acc_ -= v * dt;
    x1_ += dx1;
    x2_ += dx2;
    check_targets();
    if (remaining_ > 0 && std::abs(x2_) >= g_.stripe) close(kExited);
  }

  void close(Outcome why) {
    for (std::size_t k = 0; k < g_.u.size(); ++k) {
      if (!reached_[k]) {
        logw_[k] = acc_;
        outcome_[k] = why;
        reached_[k] = 1;
      }
    }
    remaining_ = 0;
  }

 private:
  void check_targets() {
    const double r2 = g_.radius * g_.radius;
    if (g_.dim == 1) {
      const double s = g_.d1 * x1_;
      while (next_ < g_.u.size() && s > g_.u[next_] - g_.radius) {
        mark(next_++);
      }
      return;
    }
    for (std::size_t k = 0; k < g_.u.size(); ++k) {
      if (reached_[k]) continue;
      const double e1 = x1_ - g_.u[k] * g_.d1;
      const double e2 = x2_ - g_.u[k] * g_.d2;
      if (e1 * e1 + e2 * e2 < r2) mark(k);
    }
  }

  void mark(std::size_t k) {
    logw_[k] = acc_;
    outcome_[k] = kHit;
    reached_[k] = 1;
    --remaining_;
  }

  const Geometry& g_;
  double* logw_;
  std::uint8_t* outcome_;
  std::vector<std::uint8_t> reached_;
  std::size_t remaining_;
  std::size_t next_ = 0;
  double x1_ = 0.0;
  double x2_ = 0.0;
  double acc_ = 0.0;
};

struct PathTable {
  std::size_t n_u = 0;
  std::vector<double> logw;
  std::vector<std::uint8_t> outcome;

  PathTable(std::size_t n_paths, std::size_t n_u_)
      : n_u(n_u_), logw(n_paths * n_u_, 0.0), outcome(n_paths * n_u_, kTruncated) {}
  double* logw_row(std::size_t p) { return logw.data() + p * n_u; }
  std::uint8_t* outcome_row(std::size_t p) { return outcome.data() + p * n_u; }
};

std::size_t step_count(double t_max, double dt) {
  return static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
}

bool outside(const PathTracker& t, double valid_r2) {
  return t.x1() * t.x1() + t.x2() * t.x2() > valid_r2;
}

void run_paths(const Field& field, const McConfig& cfg, const Geometry& g,
               PathTable& table) {
  const double sdt = std::sqrt(cfg.dt);
  const std::size_t steps = step_count(cfg.t_max, cfg.dt);
  const double vr = field.validity_radius();
  const double valid_r2 = vr * vr;
  parallel_for(cfg.n_paths, cfg.workers, [&](std::size_t begin, std::size_t end) {
    boost::random::normal_distribution<double> normal;
    for (std::size_t p = begin; p < end; ++p) {
      Philox4x32Wide rng(cfg.seed, p);
      PathTracker path(g, table.logw_row(p), table.outcome_row(p));
      for (std::size_t s = 0; s < steps && path.active(); ++s) {
        if (outside(path, valid_r2)) break;
        const double v = field.value(path.x1(), path.x2());
        const double dx1 = sdt * normal(rng);
        const double dx2 = g.dim == 2 ? sdt * normal(rng) : 0.0;
        path.advance(v, dx1, dx2, cfg.dt);
      }
      if (path.active()) path.close(kTruncated);
    }
  });
}

void run_paths_coupled(const Field& field, const McConfig& cfg, const Geometry& g,
                       PathTable& coarse, PathTable& fine) {
  const double half = 0.5 * cfg.dt;
  const double sdt = std::sqrt(half);
  const std::size_t steps = step_count(cfg.t_max, cfg.dt);
  const double vr = field.validity_radius();
  const double valid_r2 = vr * vr;
  parallel_for(cfg.n_paths, cfg.workers, [&](std::size_t begin, std::size_t end) {
    boost::random::normal_distribution<double> normal;
    for (std::size_t p = begin; p < end; ++p) {
      Philox4x32Wide rng(cfg.seed, p);
      PathTracker c(g, coarse.logw_row(p), coarse.outcome_row(p));
      PathTracker f(g, fine.logw_row(p), fine.outcome_row(p));
      for (std::size_t s = 0; s < steps && (c.active() || f.active()); ++s) {
        if (c.active() && outside(c, valid_r2)) c.close(kTruncated);
        if (f.active() && outside(f, valid_r2)) f.close(kTruncated);
        const double vc = c.active() ? field.value(c.x1(), c.x2()) : 0.0;
        double inc1 = 0.0;
        double inc2 = 0.0;
        for (int sub = 0; sub < 2; ++sub) {
          const double n1 = sdt * normal(rng);
          const double n2 = g.dim == 2 ? sdt * normal(rng) : 0.0;
          inc1 += n1;
          inc2 += n2;
          if (f.active()) {
            if (sub == 1 && outside(f, valid_r2)) {
              f.close(kTruncated);
              continue;
            }
            f.advance(field.value(f.x1(), f.x2()), n1, n2, half);
          }
        }
        if (c.active()) c.advance(vc, inc1, inc2, cfg.dt);
      }
      if (c.active()) c.close(kTruncated);
      if (f.active()) f.close(kTruncated);
    }
  });
}

std::vector<TravelCostEstimate> summarize(const PathTable& table,
                                          std::span<const double> u,
                                          std::size_t n_paths,
                                          bool keep_truncated) {
  std::vector<TravelCostEstimate> out(u.size());
  std::vector<double> contrib(n_paths);
  for (std::size_t k = 0; k < u.size(); ++k) {
    TravelCostEstimate& e = out[k];
    e.u = u[k];
    std::size_t hits = 0;
    std::size_t truncated = 0;
    double top = kNegInf;
    for (std::size_t p = 0; p < n_paths; ++p) {
      const std::size_t idx = p * table.n_u + k;
      double lw = kNegInf;
      switch (table.outcome[idx]) {
        case kHit:
          ++hits;
          lw = table.logw[idx];
          break;
        case kTruncated:
          ++truncated;
          if (keep_truncated) lw = table.logw[idx];
          break;
        default:
          break;
      }
      contrib[p] = lw;
      top = std::max(top, lw);
    }
    e.n_effective = hits;
    e.truncated_fraction = static_cast<double>(truncated) / static_cast<double>(n_paths);
    if (top == kNegInf) {
      e.status = EstimateStatus::kUnderflow;
      e.a_hat = std::numeric_limits<double>::infinity();
      e.stderr_a = std::numeric_limits<double>::infinity();
      e.mean_weight = 0.0;
      if (truncated == n_paths) e.status = EstimateStatus::kAllTruncated;
      continue;
    }
    // Rescale only when plain weights could underflow; unscaled sums keep the
    // estimate exactly monotone in the potential for a fixed seed.
    const double shift = top > kRescaleBelow ? 0.0 : top;
    for (double& c : contrib) c = std::exp(c - shift);
    const SampleMoments m = sample_moments(contrib);
    e.a_hat = -(shift + std::log(m.mean));
    e.stderr_a = m.stderr_mean / m.mean;
    e.mean_weight = std::exp(-e.a_hat);
    if (hits == 0 && truncated == n_paths) {
      e.status = EstimateStatus::kAllTruncated;
    } else if (e.mean_weight == 0.0) {
      e.status = EstimateStatus::kUnderflow;
    }
  }
  return out;
}

Geometry field_geometry(const Field& field, const McConfig& cfg) {
  Geometry g;
  g.dim = field.dimension();
  g.u = cfg.u_grid;
  g.radius = 1.0;
  if (g.dim == 1) {
    g.d1 = cfg.direction[0] >= 0.0 ? 1.0 : -1.0;
    g.d2 = 0.0;
  } else {
    const double n = std::hypot(cfg.direction[0], cfg.direction[1]);
    g.d1 = cfg.direction[0] / n;
    g.d2 = cfg.direction[1] / n;
  }
  for (double u : cfg.u_grid) {
    if (!(u > g.radius)) throw std::invalid_argument("every u must exceed the target radius 1");
  }
  return g;
}

std::vector<TravelCostEstimate> ball_costs(double c, double R, double stripe,
                                           const McConfig& cfg, bool keep) {
  cfg.validate();
  if (!(R > 0.0)) throw std::invalid_argument("R must be > 0");
  for (double u : cfg.u_grid) {
    if (!(u > R)) throw std::invalid_argument("every u must exceed R");
  }
  const ConstantField field(c, 2);
  Geometry g;
  g.dim = 2;
  g.d1 = 1.0;
  g.d2 = 0.0;
  g.radius = R;
  g.u = cfg.u_grid;
  g.stripe = stripe;
  PathTable table(cfg.n_paths, cfg.u_grid.size());
  run_paths(field, cfg, g, table);
  return summarize(table, cfg.u_grid, cfg.n_paths, keep);
}

}  // namespace

void McConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
  if (u_grid.empty()) throw std::invalid_argument("u_grid must be nonempty");
  for (std::size_t i = 1; i < u_grid.size(); ++i) {
    if (!(u_grid[i] > u_grid[i - 1])) {
      throw std::invalid_argument("u_grid must be strictly increasing");
    }
  }
  if (!(std::hypot(direction[0], direction[1]) > 0.0)) {
    throw std::invalid_argument("direction must be nonzero");
  }
}

const char* to_string(EstimateStatus s) noexcept {
  switch (s) {
    case EstimateStatus::kOk:
      return "ok";
    case EstimateStatus::kAllTruncated:
      return "all_truncated";
    case EstimateStatus::kUnderflow:
      return "underflow";
  }
  return "unknown";
}

std::vector<TravelCostEstimate> simulate_travel_costs(const Field& field,
                                                      const McConfig& cfg) {
  cfg.validate();
  const Geometry g = field_geometry(field, cfg);
  PathTable table(cfg.n_paths, cfg.u_grid.size());
  run_paths(field, cfg, g, table);
  return summarize(table, cfg.u_grid, cfg.n_paths, cfg.keep_truncated_weight);
}

TravelCostEstimate simulate_travel_cost(const Field& field, double u, McConfig cfg) {
  cfg.u_grid = {u};
  return simulate_travel_costs(field, cfg).front();
}

std::pair<std::vector<TravelCostEstimate>, std::vector<TravelCostEstimate>>
simulate_travel_costs_coupled(const Field& field, const McConfig& cfg) {
  cfg.validate();
  const Geometry g = field_geometry(field, cfg);
  PathTable coarse(cfg.n_paths, cfg.u_grid.size());
  PathTable fine(cfg.n_paths, cfg.u_grid.size());
  run_paths_coupled(field, cfg, g, coarse, fine);
  return {summarize(coarse, cfg.u_grid, cfg.n_paths, cfg.keep_truncated_weight),
          summarize(fine, cfg.u_grid, cfg.n_paths, cfg.keep_truncated_weight)};
}

SlopeFit fit_alpha(std::span<const TravelCostEstimate> table, int dimension,
                   bool log_prefactor) {
  std::vector<double> xs, ys, sig;
  for (const auto& e : table) {
    if (!e.usable() || !std::isfinite(e.a_hat) || !std::isfinite(e.stderr_a)) continue;
    xs.push_back(e.u);
    double y = e.a_hat;
    if (log_prefactor) y -= 0.5 * static_cast<double>(dimension - 1) * std::log(e.u);
    ys.push_back(y);
    sig.push_back(e.stderr_a);
  }
  const std::size_t n = xs.size();
  if (n < 3) throw std::runtime_error("slope fit needs at least 3 usable u points");
  const bool weighted =
      std::all_of(sig.begin(), sig.end(), [](double s) { return s > 0.0; });

  double s = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weighted ? 1.0 / (sig[i] * sig[i]) : 1.0;
    s += w;
    sx += w * xs[i];
    sy += w * ys[i];
    sxx += w * xs[i] * xs[i];
    sxy += w * xs[i] * ys[i];
  }
  const double delta = s * sxx - sx * sx;
  if (!(delta > 0.0)) throw std::runtime_error("slope fit needs distinct u values");
  SlopeFit fit;
  fit.points = n;
  fit.slope = (s * sxy - sx * sy) / delta;
  fit.intercept = (sxx * sy - sx * sxy) / delta;
  if (weighted) {
    fit.stderr_slope = std::sqrt(s / delta);
  } else {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ys[i] - fit.intercept - fit.slope * xs[i];
      rss += r * r;
    }
    fit.stderr_slope = std::sqrt(rss / static_cast<double>(n - 2) * s / delta);
  }
  return fit;
}

AlphaEstimate estimate_alpha(const Field& field, const McConfig& cfg) {
  AlphaEstimate out;
  out.table = simulate_travel_costs(field, cfg);
  out.fit = fit_alpha(out.table, field.dimension(), cfg.log_prefactor);
  return out;
}

std::vector<TravelCostEstimate> travel_cost_in_stripe(double c, double R,
                                                      const McConfig& cfg) {
  return ball_costs(c, R, R, cfg, false);
}

std::vector<TravelCostEstimate> travel_cost_to_ball(double c, double R,
                                                    const McConfig& cfg) {
  return ball_costs(c, R, std::numeric_limits<double>::infinity(), cfg,
                    cfg.keep_truncated_weight);
}

}  // namespace lyap
