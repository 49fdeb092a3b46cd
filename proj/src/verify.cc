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

#include "ageleak/verify.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "ageleak/age.h"
#include "ageleak/error.h"
#include "ageleak/leakage.h"
#include "ageleak/output.h"
#include "ageleak/policies.h"
#include "ageleak/sim.h"
#include "ageleak/tradeoff.h"

namespace ageleak {

namespace {

constexpr double kMuGrid[] = {0.25, 0.5, 0.75, 1.0};
constexpr double kLambdaGrid[] = {0.1, 0.5, 0.9};

CheckResult result(std::string name, bool pass, std::string detail) {
  CheckResult r;
  r.name = std::move(name);
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

PolicySpec leakage_policy(PolicyKind kind, double mu) {
  // lambda does not enter any leakage computation; 0.5 is a placeholder.
  return kind == PolicyKind::kMbt ? PolicySpec::mbt(0.5, 1.0, mu)
                                  : PolicySpec::rad(0.5, mu);
}

SimConfig stock_sim(const PolicySpec& policy) {
  SimConfig config;
  config.policy = policy;
  config.horizon = 1'000'000;
  config.warmup = 10'000;
  config.seed = 0;
  return config;
}

std::string age_detail(double simulated, double expected, double tolerance) {
  return "age " + format_number(simulated) + " vs " + format_number(expected) +
         " (tol " + format_number(tolerance) + ")";
}

// Simulated-vs-formula acceptance: 3 batch-means errors, floored by 1% of
// the target so near-deterministic runs do not demand microscopic agreement.
CheckResult sim_against(const std::string& name, const SimConfig& config,
                        double expected) {
  const AgeEstimate estimate = simulate_aoi(config);
  const double tolerance = std::max(3.0 * estimate.std_error, 0.01 * expected);
  const bool pass = std::fabs(estimate.mean_age - expected) <= tolerance;
  return result(name, pass, age_detail(estimate.mean_age, expected, tolerance));
}

}  // namespace

std::vector<CheckResult> check_rate_law_oracle() {
  std::vector<CheckResult> results;
  for (PolicyKind kind : {PolicyKind::kMbt, PolicyKind::kRad}) {
    for (double mu : kMuGrid) {
      double worst = 0.0;
      for (int n = 1; n <= 8; ++n) {
        const LeakageReport report =
            maximal_leakage_oracle(leakage_policy(kind, mu), n);
        const double expected = static_cast<double>(n) * std::log1p(mu);
        worst = std::max(worst, std::fabs(report.leakage_nats - expected));
      }
      results.push_back(result(
          std::string("rate-law ") + to_string(kind) + " mu=" +
              format_number(mu),
          worst < 1e-9,
          "n=1..8, worst |oracle - n*ln(1+mu)| = " + format_number(worst)));
    }
  }
  return results;
}

std::vector<CheckResult> check_pointwise_max_law() {
  std::vector<CheckResult> results;
  for (PolicyKind kind : {PolicyKind::kMbt, PolicyKind::kRad}) {
    for (double mu : kMuGrid) {
      bool pass = true;
      std::string detail = "n=1..8, every y: max = mu^(ones), attained at x=y";
      for (int n = 1; n <= 8 && pass; ++n) {
        const Lemma1Report report =
            verify_lemma1(leakage_policy(kind, mu), n);
        if (!report.holds) {
          pass = false;
          detail = "counterexample at n=" + format_number(n) + ", y=" +
                   report.counterexamples.front().y.to_string();
        }
      }
      results.push_back(result(std::string("pointwise-max ") +
                                   to_string(kind) + " mu=" +
                                   format_number(mu),
                               pass, detail));
    }
  }
  return results;
}

std::vector<CheckResult> check_dad_law() {
  std::vector<CheckResult> results;
  const double ln2 = std::log(2.0);
  for (std::int64_t tau = 1; tau <= 4; ++tau) {
    bool pass = true;
    std::string detail = "n=1..12: leakage == floor(n/tau)*ln2, maxima == 1, "
                         "support == 2^floor(n/tau), all exact";
    for (int n = 1; n <= 12 && pass; ++n) {
      const LeakageReport report =
          maximal_leakage_oracle(PolicySpec::dad(0.5, tau), n);
      const std::int64_t blocks = n / tau;
      // Per-output maxima are certainties, so every comparison here is
      // against exactly representable values; no tolerance.
      if (report.leakage_nats != static_cast<double>(blocks) * ln2 ||
          report.support_size != dad_support_size(n, tau)) {
        pass = false;
        detail = "mismatch at n=" + format_number(n);
        break;
      }
      for (const auto& [y_index, best] : report.per_output) {
        if (best.value != 1.0) {
          pass = false;
          detail = "non-unit max at n=" + format_number(n);
          break;
        }
      }
    }
    results.push_back(result("dump-law tau=" + format_number(
                                 static_cast<double>(tau)),
                             pass, detail));
  }
  return results;
}

std::vector<CheckResult> check_dad_pointwise() {
  std::vector<CheckResult> results;
  for (std::int64_t tau = 1; tau <= 4; ++tau) {
    bool pass = true;
    std::string detail =
        "n=1..10: supported y have max exactly 1 attained at x=y; "
        "others exactly 0";
    const PolicySpec policy = PolicySpec::dad(0.5, tau);
    for (int n = 1; n <= 10 && pass; ++n) {
      const std::uint64_t count = std::uint64_t{1} << n;
      for (std::uint64_t yi = 0; yi < count; ++yi) {
        const BitSeq y = BitSeq::from_index(n, yi);
        bool in_support = true;
        for (int i = 0; i < n; ++i) {
          if (y[i] && (i + 1) % tau != 0) {
            in_support = false;
            break;
          }
        }
        const MaxConditional best = max_conditional(policy, y);
        const double at_y = in_support ? conditional_pmf(policy, y, y) : 0.0;
        if (in_support ? (best.value != 1.0 || at_y != 1.0)
                       : best.value != 0.0) {
          pass = false;
          detail = "violation at n=" + format_number(n) + ", y=" +
                   y.to_string();
          break;
        }
      }
    }
    results.push_back(result("dump-pointwise tau=" + format_number(
                                 static_cast<double>(tau)),
                             pass, detail));
  }
  return results;
}

std::vector<CheckResult> check_sampling_age_simulation() {
  std::vector<CheckResult> results;
  for (double lambda : kLambdaGrid) {
    for (std::int64_t tau : {1, 2, 3, 5}) {
      const double expected = aoi_dad(lambda, tau).age_slots;
      results.push_back(sim_against(
          "sim dad lambda=" + format_number(lambda) + " tau=" +
              format_number(static_cast<double>(tau)),
          stock_sim(PolicySpec::dad(lambda, tau)), expected));
    }
    for (double mu : {0.25, 0.5, 1.0}) {
      const double expected = aoi_rad(lambda, mu).age_slots;
      results.push_back(sim_against(
          "sim rad lambda=" + format_number(lambda) + " mu=" +
              format_number(mu),
          stock_sim(PolicySpec::rad(lambda, mu)), expected));
    }
  }
  return results;
}

std::vector<CheckResult> check_queue_age_simulation() {
  std::vector<CheckResult> results;
  for (double mu : {0.6, 0.75, 0.9, 1.0}) {
    const double expected = aoi_mbt(0.5, 1.0, mu).age_slots;
    const SimConfig config = stock_sim(PolicySpec::mbt(0.5, 1.0, mu));
    results.push_back(
        sim_against("sim queue mu=" + format_number(mu), config, expected));

    // Same run, independent estimator: per-delivery (gap, system time)
    // moments. Standard error from 20 contiguous sample blocks.
    const std::vector<SystemTimeSample> samples =
        collect_system_time_samples(config);
    const double estimate = aoi_from_system_times(samples);
    const std::size_t block = samples.size() / 20;
    double se = 0.0;
    if (block > 0) {
      double block_means[20];
      double avg = 0.0;
      for (int b = 0; b < 20; ++b) {
        const std::vector<SystemTimeSample> slice(
            samples.begin() + static_cast<std::ptrdiff_t>(b * block),
            samples.begin() + static_cast<std::ptrdiff_t>((b + 1) * block));
        block_means[b] = aoi_from_system_times(slice);
        avg += block_means[b];
      }
      avg /= 20.0;
      double ss = 0.0;
      for (double m : block_means) ss += (m - avg) * (m - avg);
      se = std::sqrt(ss / 19.0 / 20.0);
    }
    const bool pass = se > 0.0 && std::fabs(estimate - expected) <= 3.0 * se;
    results.push_back(result(
        "system-time estimator mu=" + format_number(mu), pass,
        age_detail(estimate, expected, 3.0 * se)));
  }
  return results;
}

std::vector<CheckResult> check_common_point() {
  std::vector<CheckResult> results;
  const double mbt = aoi_mbt(0.5, 1.0, 1.0).age_slots;
  const double dad = aoi_dad(0.5, 1).age_slots;
  const double rad = aoi_rad(0.5, 1.0).age_slots;
  results.push_back(result(
      "common point analytic",
      mbt == 3.0 && dad == 3.0 && rad == 3.0,
      "unit-rate ages: " + format_number(mbt) + ", " + format_number(dad) +
          ", " + format_number(rad) + " (expected exactly 3)"));
  results.push_back(sim_against("common point sim mbt",
                                stock_sim(PolicySpec::mbt(0.5, 1.0, 1.0)),
                                3.0));
  results.push_back(sim_against("common point sim dad",
                                stock_sim(PolicySpec::dad(0.5, 1)), 3.0));
  results.push_back(sim_against("common point sim rad",
                                stock_sim(PolicySpec::rad(0.5, 1.0)), 3.0));
  return results;
}

namespace {

// Total variation between a measured histogram (counts) and a renewal-age
// model, over the union of supports; the model tail is truncated below
// 1e-12.
double histogram_tv(const std::map<std::int64_t, std::int64_t>& histogram,
                    const InterArrivalModel& model) {
  std::int64_t total = 0;
  std::int64_t max_z = 1;
  for (const auto& [z, count] : histogram) {
    total += count;
    max_z = std::max(max_z, z);
  }
  double tv = 0.0;
  for (std::int64_t z = 1;; ++z) {
    const double p = renewal_age_pmf(model, z);
    const auto it = histogram.find(z);
    const double observed =
        it == histogram.end()
            ? 0.0
            : static_cast<double>(it->second) / static_cast<double>(total);
    tv += std::fabs(observed - p);
    if (z >= max_z && model.tail(z + 1) < 1e-12) break;
  }
  return tv / 2.0;
}

CheckResult renewal_histogram_check(const std::string& name,
                                    const SimConfig& config,
                                    ObservationPoint point,
                                    const InterArrivalModel& model) {
  const auto histogram = empirical_renewal_age(config, point);
  const double tv = histogram_tv(histogram, model);
  return result(name, tv < 0.01, "total variation " + format_number(tv) +
                                     " (tol 0.01)");
}

}  // namespace

std::vector<CheckResult> check_renewal_machinery() {
  std::vector<CheckResult> results;
  for (double lambda : kLambdaGrid) {
    results.push_back(renewal_histogram_check(
        "input-age histogram lambda=" + format_number(lambda),
        stock_sim(PolicySpec::rad(lambda, 0.5)),
        ObservationPoint::kServerInput, InterArrivalModel::geometric(lambda)));
  }
  results.push_back(renewal_histogram_check(
      "sampling-age histogram dad tau=4",
      stock_sim(PolicySpec::dad(0.5, 4)), ObservationPoint::kMonitorSampling,
      InterArrivalModel::deterministic(4)));
  for (double mu : {0.25, 0.7}) {
    results.push_back(renewal_histogram_check(
        "sampling-age histogram rad mu=" + format_number(mu),
        stock_sim(PolicySpec::rad(0.5, mu)),
        ObservationPoint::kMonitorSampling, InterArrivalModel::geometric(mu)));
  }
  bool exact = true;
  std::string detail = "E[Z] == 1/lambda bit-for-bit on lambda = k/20, k=1..20";
  for (int k = 1; k <= 20; ++k) {
    const double lambda = static_cast<double>(k) / 20.0;
    const double mean_age =
        renewal_mean_age(InterArrivalModel::geometric(lambda));
    if (mean_age != 1.0 / lambda) {
      exact = false;
      detail = "mismatch at lambda=" + format_number(lambda) + ": " +
               format_number(mean_age) + " vs " + format_number(1.0 / lambda);
      break;
    }
  }
  results.push_back(result("geometric mean-age identity", exact, detail));
  return results;
}

std::vector<CheckResult> check_age_decomposition() {
  std::vector<CheckResult> results;
  const std::vector<PolicySpec> points = {
      PolicySpec::dad(0.5, 3), PolicySpec::dad(0.1, 4),
      PolicySpec::dad(0.9, 2), PolicySpec::rad(0.9, 0.9),
      PolicySpec::rad(0.5, 0.25), PolicySpec::rad(0.3, 0.6),
  };
  for (const PolicySpec& policy : points) {
    const DecompositionReport report =
        decomposition_check(stock_sim(policy));
    std::string name = std::string("decomposition ") + to_string(policy.kind);
    name += " lambda=" + format_number(policy.lambda);
    if (policy.kind == PolicyKind::kDad) {
      name += " tau=" + format_number(static_cast<double>(*policy.tau));
    } else {
      name += " mu=" + format_number(*policy.mu);
    }
    results.push_back(result(
        name, report.within_three_sigma,
        "residual " + format_number(report.residual) + " +- " +
            format_number(report.residual_std_error) + " (3 sigma)"));
  }
  return results;
}

std::vector<CheckResult> check_matched_leakage_dominance() {
  bool pass = true;
  double min_margin = 1e300;
  for (std::int64_t tau = 2; tau <= 10; ++tau) {
    const MatchedLeakageReport report = matched_leakage_comparison(0.5, tau);
    const double margin = report.rad_age - report.dad_age;
    min_margin = std::min(min_margin, margin);
    if (!(margin > 0.0)) pass = false;
  }
  return {result("matched-leakage dominance", pass,
                 "lambda=0.5, tau=2..10: min (rad - dad) age margin = " +
                     format_number(min_margin))};
}

std::vector<CheckResult> check_alpha_optimization() {
  std::vector<CheckResult> results;
  RngStream rng(2026, 999);
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 20; ++i) {
    const double lambda = 0.05 + 0.9 * rng.next_uniform();
    const double mu = 0.05 + 0.95 * rng.next_uniform();
    const AlphaOptimum best = optimize_alpha(lambda, mu);
    // Independent oracle: exhaustive alpha grid at 1e-4 resolution.
    double grid_best = 1e300;
    for (int k = 1; k <= 10000; ++k) {
      const double alpha = static_cast<double>(k) * 1e-4;
      if (alpha * lambda >= mu) break;
      const double age = aoi_mbt(lambda, alpha, mu).age_slots;
      grid_best = std::min(grid_best, age);
    }
    const double diff = std::fabs(best.age_star - grid_best);
    worst = std::max(worst, diff);
    if (diff > 1e-3) pass = false;
  }
  results.push_back(result(
      "alpha optimizer vs grid", pass,
      "20 seeded (lambda, mu) pairs, worst |age diff| = " +
          format_number(worst) + " (tol 1e-3)"));

  bool feasibility_pass = false;
  std::string detail;
  const AlphaOptimum best = optimize_alpha(0.9, 0.3);
  bool alpha1_infeasible = false;
  try {
    aoi_mbt(0.9, 1.0, 0.3);
  } catch (const Error& e) {
    alpha1_infeasible = e.code() == ErrorCode::kUnstable;
  }
  feasibility_pass = alpha1_infeasible && std::isfinite(best.age_star) &&
                     best.alpha_star * 0.9 < 0.3;
  detail = "lambda=0.9, mu=0.3: alpha*=" + format_number(best.alpha_star) +
           ", age=" + format_number(best.age_star) +
           (alpha1_infeasible ? "; alpha=1 correctly unstable"
                              : "; alpha=1 unexpectedly accepted");
  results.push_back(result("alpha optimizer feasibility", feasibility_pass,
                           detail));
  return results;
}

namespace {

struct CommandCapture {
  int status = -1;
  std::string output;
};

CommandCapture run_command(const std::string& command) {
  CommandCapture capture;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return capture;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    capture.output.append(buffer, got);
  }
  const int rc = pclose(pipe);
  capture.status = rc;
  return capture;
}

std::string read_file(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (f == nullptr) return {};
  std::string content;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof(buffer), f)) > 0) {
    content.append(buffer, got);
  }
  std::fclose(f);
  return content;
}

}  // namespace

std::vector<CheckResult> check_cli_determinism(const std::string& cli_path) {
  std::vector<CheckResult> results;
  if (cli_path.empty()) {
    results.push_back(result("determinism", false, "no binary path given"));
    return results;
  }
  const std::string exe = "'" + cli_path + "'";
  const std::vector<std::string> commands = {
      exe + " analytic --policy rad --lambda 0.5 --mu 0.5",
      exe + " analytic --policy dad --lambda 0.5 --tau 1",
      exe + " simulate --policy dad --lambda 0.5 --tau 3 --slots 1000000 --seed 7",
      exe + " simulate --policy rad --lambda 0.9 --mu 0.25 --slots 200000 "
            "--warmup 5000 --seed 42",
      exe + " leakage --policy mbt --lambda 0.5 --alpha 1 --mu 0.5 --n 6 --both",
      exe + " verify --suite lemma1",
  };
  for (const std::string& command : commands) {
    const CommandCapture first = run_command(command);
    const CommandCapture second = run_command(command);
    const bool pass = first.status == 0 && first.status == second.status &&
                      first.output == second.output &&
                      !first.output.empty();
    results.push_back(result("determinism: " + command, pass,
                             pass ? "byte-identical across two runs"
                                  : "outputs differ between runs"));
  }
  // File-writing command: same path, compare the written bytes.
  char dir_template[] = "/tmp/ageleak-verify-XXXXXX";
  const char* dir = mkdtemp(dir_template);
  if (dir != nullptr) {
    const std::string out = std::string(dir) + "/fig2.csv";
    const std::string command = exe + " pareto --figure fig2 --out '" + out + "'";
    run_command(command);
    const std::string first = read_file(out);
    run_command(command);
    const std::string second = read_file(out);
    const bool pass = !first.empty() && first == second;
    results.push_back(result("determinism: " + command, pass,
                             pass ? "byte-identical csv across two runs"
                                  : "csv differs between runs"));
    std::remove(out.c_str());
    std::remove(dir);
  }
  return results;
}

std::optional<Suite> suite_from_name(const std::string& name) {
  if (name == "lemma1") return Suite::kLemma1;
  if (name == "lemma2") return Suite::kLemma2;
  if (name == "theorem1") return Suite::kTheorem1;
  if (name == "theorem2") return Suite::kTheorem2;
  if (name == "theorem3") return Suite::kTheorem3;
  if (name == "geoage") return Suite::kGeoAge;
  if (name == "renewal") return Suite::kRenewal;
  if (name == "decomposition") return Suite::kDecomposition;
  if (name == "all") return Suite::kAll;
  return std::nullopt;
}

const char* to_string(Suite suite) {
  switch (suite) {
    case Suite::kLemma1:
      return "lemma1";
    case Suite::kLemma2:
      return "lemma2";
    case Suite::kTheorem1:
      return "theorem1";
    case Suite::kTheorem2:
      return "theorem2";
    case Suite::kTheorem3:
      return "theorem3";
    case Suite::kGeoAge:
      return "geoage";
    case Suite::kRenewal:
      return "renewal";
    case Suite::kDecomposition:
      return "decomposition";
    case Suite::kAll:
      return "all";
  }
  return "unknown";
}

std::vector<CheckResult> run_suite(Suite suite, const std::string& cli_path) {
  switch (suite) {
    case Suite::kLemma1:
      return check_pointwise_max_law();
    case Suite::kLemma2:
      return check_dad_pointwise();
    case Suite::kTheorem1:
      return check_rate_law_oracle();
    case Suite::kTheorem2:
      return check_dad_law();
    case Suite::kTheorem3:
      return check_sampling_age_simulation();
    case Suite::kGeoAge:
      return check_queue_age_simulation();
    case Suite::kRenewal:
      return check_renewal_machinery();
    case Suite::kDecomposition:
      return check_age_decomposition();
    case Suite::kAll:
      break;
  }
  std::vector<CheckResult> all;
  for (Suite s : {Suite::kTheorem1, Suite::kLemma1, Suite::kTheorem2,
                  Suite::kLemma2, Suite::kTheorem3, Suite::kGeoAge,
                  Suite::kRenewal, Suite::kDecomposition}) {
    const std::vector<CheckResult> part = run_suite(s);
    all.insert(all.end(), part.begin(), part.end());
  }
  for (auto&& extra :
       {check_common_point(), check_matched_leakage_dominance(),
        check_alpha_optimization()}) {
    all.insert(all.end(), extra.begin(), extra.end());
  }
  if (!cli_path.empty()) {
    const std::vector<CheckResult> cli = check_cli_determinism(cli_path);
    all.insert(all.end(), cli.begin(), cli.end());
  }
  return all;
}

}  // namespace ageleak
