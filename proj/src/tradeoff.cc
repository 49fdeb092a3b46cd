// Copyright 2026 the ageleak authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ageleak/tradeoff.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ageleak/age.h"
#include "ageleak/error.h"
#include "ageleak/leakage.h"
#include "ageleak/sim.h"

namespace ageleak {

namespace {

// MBT age as a function of the effective admitted rate r = alpha*lambda at
// fixed mu. Strictly convex on (0, mu): the second derivative
// 2/r^3 + 2(1-mu)/(mu-r)^3 is positive there.
double queue_age(double r, double mu) {
  return 1.0 / r + (1.0 - r) / (mu - r) - r / (mu * mu) + r / mu;
}

double queue_age_slope(double r, double mu) {
  return -1.0 / (r * r) + (1.0 - mu) / ((mu - r) * (mu - r)) -
         1.0 / (mu * mu) + 1.0 / mu;
}

void require_rate(const char* field, double value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw_error(ErrorCode::kOutOfRange, field, "must be in (0, 1]");
  }
}

TradeoffPoint analytic_point(const PolicySpec& policy, double leakage) {
  TradeoffPoint point;
  point.policy = policy;
  point.leakage_rate_nats = leakage;
  point.source = PointSource::kAnalytic;
  return point;
}

void append_sim_overlay(std::vector<TradeoffPoint>& points,
                        const TradeoffPoint& analytic,
                        const SimOverlay& overlay) {
  if (std::isnan(analytic.age_slots)) return;  // nothing to simulate
  SimConfig config;
  config.policy = analytic.policy;
  config.horizon = overlay.slots;
  config.warmup = overlay.warmup;
  config.seed = overlay.seed;
  const AgeEstimate estimate = simulate_aoi(config);
  TradeoffPoint sim = analytic;
  sim.source = PointSource::kSimulated;
  sim.age_slots = estimate.mean_age;
  sim.age_std_error = estimate.std_error;
  points.push_back(std::move(sim));
}

// One MBT grid point; optimization and instability handling live here.
TradeoffPoint mbt_point(double lambda, double alpha, double mu,
                        bool optimize) {
  if (optimize) {
    const AlphaOptimum best = optimize_alpha(lambda, mu);
    TradeoffPoint point = analytic_point(
        PolicySpec::mbt(lambda, best.alpha_star, mu), std::log1p(mu));
    point.age_slots = best.age_star;
    point.alpha_star = best.alpha_star;
    point.effective_rate = best.alpha_star * lambda;
    point.note = "alpha-optimized";
    return point;
  }
  TradeoffPoint point =
      analytic_point(PolicySpec::mbt(lambda, alpha, mu), std::log1p(mu));
  try {
    point.age_slots = aoi_mbt(lambda, alpha, mu).age_slots;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnstable) throw;
    point.age_slots = std::numeric_limits<double>::quiet_NaN();
    point.note = "unstable: alpha*lambda >= mu";
  }
  return point;
}

}  // namespace

const char* to_string(PointSource source) {
  switch (source) {
    case PointSource::kAnalytic:
      return "analytic";
    case PointSource::kSimulated:
      return "simulated";
    case PointSource::kOracle:
      return "oracle";
  }
  return "unknown";
}

std::vector<TradeoffPoint> pareto_sweep(const SweepSpec& spec) {
  require_rate("lambda", spec.lambda);
  std::vector<TradeoffPoint> points;
  switch (spec.kind) {
    case PolicyKind::kMbt: {
      if (spec.mu_grid.empty()) {
        throw_error(ErrorCode::kEmptyInput, "mu_grid", "sweep needs a grid");
      }
      if (!spec.optimize_alpha) require_rate("alpha", spec.alpha);
      for (double mu : spec.mu_grid) {
        require_rate("mu", mu);
        points.push_back(
            mbt_point(spec.lambda, spec.alpha, mu, spec.optimize_alpha));
        if (spec.sim_overlay) {
          append_sim_overlay(points, points.back(), *spec.sim_overlay);
        }
      }
      break;
    }
    case PolicyKind::kRad: {
      if (spec.mu_grid.empty()) {
        throw_error(ErrorCode::kEmptyInput, "mu_grid", "sweep needs a grid");
      }
      for (double mu : spec.mu_grid) {
        TradeoffPoint point = analytic_point(PolicySpec::rad(spec.lambda, mu),
                                             std::log1p(mu));
        point.age_slots = aoi_rad(spec.lambda, mu).age_slots;
        points.push_back(std::move(point));
        if (spec.sim_overlay) {
          append_sim_overlay(points, points.back(), *spec.sim_overlay);
        }
      }
      break;
    }
    case PolicyKind::kDad: {
      if (spec.tau_grid.empty()) {
        throw_error(ErrorCode::kEmptyInput, "tau_grid", "sweep needs a grid");
      }
      for (std::int64_t tau : spec.tau_grid) {
        // Asymptotic rate keeps the leakage axis smooth in tau.
        TradeoffPoint point =
            analytic_point(PolicySpec::dad(spec.lambda, tau),
                           analytic_leakage_rate(
                               PolicySpec::dad(spec.lambda, tau)));
        point.age_slots = aoi_dad(spec.lambda, tau).age_slots;
        points.push_back(std::move(point));
        if (spec.sim_overlay) {
          append_sim_overlay(points, points.back(), *spec.sim_overlay);
        }
      }
      break;
    }
  }
  return points;
}

AlphaOptimum optimize_alpha(double lambda, double mu, double tolerance) {
  require_rate("lambda", lambda);
  require_rate("mu", mu);
  if (!(tolerance > 0.0)) {
    throw_error(ErrorCode::kOutOfRange, "tolerance", "must be positive");
  }
  AlphaOptimum best;
  if (lambda < mu && queue_age_slope(lambda, mu) <= 0.0) {
    // Age still falling at the full-admission boundary.
    best.alpha_star = 1.0;
    best.age_star = queue_age(lambda, mu);
    return best;
  }
  const double epsilon = 1e-6 * lambda;
  double lo = epsilon;
  double hi = std::min(lambda, mu) - epsilon;
  if (hi <= lo) hi = lo * (1.0 + 1e-9);
  // Golden-section over the effective rate; convexity makes the bracket
  // shrink onto the unique minimizer.
  const double inv_phi = 0.6180339887498949;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = queue_age(c, mu);
  double fd = queue_age(d, mu);
  for (int iter = 0; iter < 300 && hi - lo > 1e-14; ++iter) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = queue_age(c, mu);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = queue_age(d, mu);
    }
  }
  const double r = fc <= fd ? c : d;
  best.alpha_star = std::min(r / lambda, 1.0);
  best.age_star = std::min(fc, fd);
  (void)tolerance;  // bracket shrinks to machine precision, below any valid tolerance
  return best;
}

MatchedLeakageReport matched_leakage_comparison(double lambda,
                                                std::int64_t tau) {
  require_rate("lambda", lambda);
  if (tau < 1) {
    throw_error(ErrorCode::kOutOfRange, "tau", "must be >= 1");
  }
  MatchedLeakageReport report;
  report.lambda = lambda;
  report.tau = tau;
  report.mu_matched = std::exp2(1.0 / static_cast<double>(tau)) - 1.0;
  report.leakage_rate_nats = std::log(2.0) / static_cast<double>(tau);
  report.dad_age = aoi_dad(lambda, tau).age_slots;
  report.rad_age = aoi_rad(lambda, report.mu_matched).age_slots;
  const AlphaOptimum best = optimize_alpha(lambda, report.mu_matched);
  report.mbt_age = best.age_star;
  report.mbt_alpha_star = best.alpha_star;
  return report;
}

std::optional<Figure> figure_from_name(const std::string& name) {
  if (name == "fig2") return Figure::kFig2;
  if (name == "fig3") return Figure::kFig3;
  if (name == "fig4") return Figure::kFig4;
  return std::nullopt;
}

namespace {

std::vector<double> rad_mu_grid() {
  std::vector<double> grid;
  for (int k = 5; k <= 100; ++k) {
    grid.push_back(static_cast<double>(k) / 100.0);
  }
  return grid;
}

std::vector<std::int64_t> dad_tau_grid() {
  std::vector<std::int64_t> grid;
  for (std::int64_t tau = 1; tau <= 39; ++tau) {
    grid.push_back(tau);
  }
  return grid;
}

// Descending from 1.0 in exact-thousandths steps of 0.004, cut at the
// stability edge lambda + eps, then reversed to ascending. Hits the
// published 0.524 endpoint exactly for lambda = 0.5.
std::vector<double> mbt_mu_grid(double lambda, double eps) {
  std::vector<double> grid;
  for (int j = 0;; ++j) {
    const double mu = static_cast<double>(1000 - 4 * j) / 1000.0;
    if (mu < lambda + eps - 1e-12) break;
    grid.push_back(mu);
  }
  std::reverse(grid.begin(), grid.end());
  return grid;
}

std::vector<double> envelope_mu_grid() {
  std::vector<double> grid;
  for (int k = 10; k <= 100; ++k) {
    grid.push_back(static_cast<double>(k) / 100.0);
  }
  return grid;
}

void append_all(std::vector<TradeoffPoint>& out,
                std::vector<TradeoffPoint>&& points) {
  for (TradeoffPoint& p : points) {
    out.push_back(std::move(p));
  }
}

}  // namespace

std::vector<TradeoffPoint> fig_dataset(Figure figure,
                                       const FigOverrides& overrides) {
  if (overrides.lambda) require_rate("lambda", *overrides.lambda);
  std::vector<TradeoffPoint> out;
  const std::vector<double> stock_lambdas =
      overrides.lambda ? std::vector<double>{*overrides.lambda}
                       : std::vector<double>{0.1, 0.5, 0.9};
  switch (figure) {
    case Figure::kFig2: {
      const double lambda = overrides.lambda.value_or(0.5);
      SweepSpec mbt;
      mbt.kind = PolicyKind::kMbt;
      mbt.lambda = lambda;
      mbt.alpha = 1.0;
      mbt.mu_grid = mbt_mu_grid(lambda, lambda == 0.5 ? 0.024 : 0.01);
      append_all(out, pareto_sweep(mbt));
      SweepSpec rad;
      rad.kind = PolicyKind::kRad;
      rad.lambda = lambda;
      rad.mu_grid = rad_mu_grid();
      append_all(out, pareto_sweep(rad));
      SweepSpec dad;
      dad.kind = PolicyKind::kDad;
      dad.lambda = lambda;
      dad.tau_grid = dad_tau_grid();
      append_all(out, pareto_sweep(dad));
      break;
    }
    case Figure::kFig3: {
      for (double lambda : stock_lambdas) {
        SweepSpec rad;
        rad.kind = PolicyKind::kRad;
        rad.lambda = lambda;
        rad.mu_grid = rad_mu_grid();
        append_all(out, pareto_sweep(rad));
        SweepSpec dad;
        dad.kind = PolicyKind::kDad;
        dad.lambda = lambda;
        dad.tau_grid = dad_tau_grid();
        append_all(out, pareto_sweep(dad));
      }
      break;
    }
    case Figure::kFig4: {
      for (double lambda : stock_lambdas) {
        SweepSpec mbt;
        mbt.kind = PolicyKind::kMbt;
        mbt.lambda = lambda;
        mbt.alpha = 1.0;
        mbt.mu_grid = mbt_mu_grid(lambda, lambda == 0.5 ? 0.024 : 0.01);
        append_all(out, pareto_sweep(mbt));
      }
      // One envelope; the largest arrival rate admits every envelope point
      // (the optimizer returns alpha = 1 wherever lambda binds).
      SweepSpec envelope;
      envelope.kind = PolicyKind::kMbt;
      envelope.lambda = stock_lambdas.back();
      envelope.optimize_alpha = true;
      envelope.mu_grid = envelope_mu_grid();
      append_all(out, pareto_sweep(envelope));
      break;
    }
  }
  return out;
}

}  // namespace ageleak
