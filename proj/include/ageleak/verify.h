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

#ifndef AGELEAK_VERIFY_H_
#define AGELEAK_VERIFY_H_

#include <optional>
#include <string>
#include <vector>

namespace ageleak {

// Self-check suites cross-verifying the analytic formulas against the exact
// enumeration oracle and the Monte Carlo estimators at fixed default scales.
// Each check is deterministic; suites are named after the closed-form result
// they exercise.

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // worst deviation, tolerance, parameters
};

// Leakage-rate law for MBT(alpha=1) and RAD: exact enumeration equals
// n*ln(1+mu) on mu in {0.25,0.5,0.75,1}, n in 1..8.
std::vector<CheckResult> check_rate_law_oracle();

// Pointwise maximum law on the same grid: max_x P(y|x) = mu^(ones in y),
// attained at x = y.
std::vector<CheckResult> check_pointwise_max_law();

// DAD law: leakage exactly floor(n/tau)*ln2 with per-output maxima exactly
// 1, support exactly 2^floor(n/tau); tau in 1..4, n in 1..12.
std::vector<CheckResult> check_dad_law();

// Pointwise DAD maxima on a reduced grid (tau in 1..4, n in 1..10).
std::vector<CheckResult> check_dad_pointwise();

// Simulated age vs closed form for DAD and RAD over the stock
// (lambda, tau) and (lambda, mu) grids at T = 10^6.
std::vector<CheckResult> check_sampling_age_simulation();

// Simulated MBT age vs the queueing closed form at lambda=0.5, alpha=1,
// mu in {0.6,0.75,0.9,1}, plus the system-time plug-in estimator.
std::vector<CheckResult> check_queue_age_simulation();

// All three policies at unit service rate, lambda=0.5: age exactly 3
// analytically and within 3 sigma by simulation.
std::vector<CheckResult> check_common_point();

// Empirical Z and Z' histograms vs the renewal-age pmf (TV < 0.01 at
// T = 10^6) and the bit-exact geometric mean-age identity on 20 rates.
std::vector<CheckResult> check_renewal_machinery();

// Monitor age equals input age plus sampling age: per-slot residual within
// 3 combined standard errors on 6 DAD/RAD points.
std::vector<CheckResult> check_age_decomposition();

// DAD age strictly beats RAD age at equal asymptotic leakage, lambda=0.5,
// tau in 2..10.
std::vector<CheckResult> check_matched_leakage_dominance();

// Golden-section alpha optimum vs a 1e-4 grid search on 20 seeded random
// (lambda, mu) pairs; plus the lambda > mu case where alpha = 1 is
// infeasible yet the optimum is finite.
std::vector<CheckResult> check_alpha_optimization();

// Byte-identical stdout across repeated runs of the same CLI invocations;
// needs the path to the installed binary.
std::vector<CheckResult> check_cli_determinism(const std::string& cli_path);

enum class Suite {
  kLemma1,
  kLemma2,
  kTheorem1,
  kTheorem2,
  kTheorem3,
  kGeoAge,
  kRenewal,
  kDecomposition,
  kAll,
};

std::optional<Suite> suite_from_name(const std::string& name);
const char* to_string(Suite suite);

// Runs one named suite. kAll additionally covers the dominance,
// alpha-optimization, and common-point checks, and CLI determinism when
// `cli_path` is given.
std::vector<CheckResult> run_suite(Suite suite,
                                   const std::string& cli_path = "");

}  // namespace ageleak

#endif  // AGELEAK_VERIFY_H_
