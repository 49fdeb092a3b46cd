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

#ifndef AGELEAK_TRADEOFF_H_
#define AGELEAK_TRADEOFF_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ageleak/policy.h"

namespace ageleak {

// Age-vs-leakage trade-off datasets. DAD points use the asymptotic rate
// ln2/tau on the leakage axis (integer tau keeps DAD's operating points
// discrete); MBT and RAD use ln(1+mu). For alpha < 1 the leakage column
// keeps the ln(1+mu) convention and the note says so.

enum class PointSource { kAnalytic, kSimulated, kOracle };
const char* to_string(PointSource source);

struct TradeoffPoint {
  PolicySpec policy;
  double leakage_rate_nats = 0.0;
  double age_slots = 0.0;  // NaN when flagged unstable
  PointSource source = PointSource::kAnalytic;
  // Populated on alpha-optimized rows.
  std::optional<double> alpha_star;
  std::optional<double> effective_rate;  // alpha * lambda
  // Populated on simulated rows.
  std::optional<double> age_std_error;
  std::string note;
};

struct SimOverlay {
  std::int64_t slots = 1'000'000;
  std::int64_t warmup = 10'000;
  std::uint64_t seed = 0;
};

struct SweepSpec {
  PolicyKind kind = PolicyKind::kRad;
  double lambda = 0.5;
  std::vector<double> mu_grid;        // MBT / RAD
  std::vector<std::int64_t> tau_grid; // DAD
  double alpha = 1.0;                 // fixed MBT admission when not optimizing
  bool optimize_alpha = false;
  // When set, each analytic point gains a simulated sibling row.
  std::optional<SimOverlay> sim_overlay;
};

// One analytic point per grid value (plus optional simulated siblings).
// Unstable MBT points are emitted flagged (NaN age, note) rather than
// dropped, so sweep output length always matches the grid.
std::vector<TradeoffPoint> pareto_sweep(const SweepSpec& spec);

struct AlphaOptimum {
  double alpha_star = 1.0;
  double age_star = 0.0;
};

// Minimizes the MBT age over alpha in (0, min(1, mu/lambda)) by
// golden-section search on the effective rate r = alpha*lambda (the age is
// strictly convex in r on (0, mu)). Returns the boundary alpha = 1 whenever
// the age is still decreasing there, i.e. the unconstrained minimizer
// exceeds 1. `tolerance` bounds |age - optimum|.
AlphaOptimum optimize_alpha(double lambda, double mu, double tolerance = 1e-9);

struct MatchedLeakageReport {
  double lambda = 0.0;
  std::int64_t tau = 0;
  double mu_matched = 0.0;          // 2^(1/tau) - 1, so ln(1+mu) = ln2/tau
  double leakage_rate_nats = 0.0;
  double dad_age = 0.0;
  double rad_age = 0.0;
  double mbt_age = 0.0;             // alpha-optimized at mu_matched
  double mbt_alpha_star = 1.0;
};

// Same asymptotic leakage rate for all three policies, ages side by side.
MatchedLeakageReport matched_leakage_comparison(double lambda,
                                                std::int64_t tau);

enum class Figure { kFig2, kFig3, kFig4 };
std::optional<Figure> figure_from_name(const std::string& name);

struct FigOverrides {
  // Replaces the figure's arrival-rate set with one value.
  std::optional<double> lambda;
};

// The full point set behind one of the three stock figures:
//   kFig2: lambda=0.5; MBT(alpha=1) mu in [0.524,1] step 0.004, RAD mu in
//          [0.05,1] step 0.01, DAD tau in 1..39.
//   kFig3: RAD and DAD grids of kFig2 at lambda in {0.1, 0.5, 0.9}.
//   kFig4: MBT only; alpha=1 curves for lambda in {0.1, 0.5, 0.9} with mu in
//          [lambda+eps, 1] (eps = 0.024 at lambda=0.5, else 0.01), plus the
//          alpha-optimized envelope over mu in [0.1, 1] step 0.01 (emitted
//          at lambda=0.9, which covers every envelope rate).
std::vector<TradeoffPoint> fig_dataset(Figure figure,
                                       const FigOverrides& overrides = {});

}  // namespace ageleak

#endif  // AGELEAK_TRADEOFF_H_
