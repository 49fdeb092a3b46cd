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

// ageleak: age and leakage analysis of slotted status-update policies.
//
// Subcommands: analytic, simulate, leakage, verify, pareto. All output is
// deterministic given the full flag set (including --seed); nothing here
// reads the clock or the environment.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or validation error,
// 3 instability (mean age diverges).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ageleak/age.h"
#include "ageleak/error.h"
#include "ageleak/leakage.h"
#include "ageleak/output.h"
#include "ageleak/policy.h"
#include "ageleak/sim.h"
#include "ageleak/tradeoff.h"
#include "ageleak/verify.h"

namespace {

using ageleak::Error;
using ageleak::ErrorCode;
using ageleak::OutputRecord;
using ageleak::PolicyKind;
using ageleak::PolicySpec;
using ageleak::format_number;

constexpr double kLn2 = 0.6931471805599453;
const char* kAlphaCaveat = "alpha<1: not covered by Theorem 1";

// Shared --policy/--lambda/--alpha/--mu/--tau block. Presence of each flag
// decides which PolicySpec fields engage; validate_policy then enforces the
// per-kind pairing, so e.g. `--policy rad --tau 3` fails as extraneous.
struct PolicyFlags {
  std::string policy;
  double lambda = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  std::int64_t tau = 0;
  CLI::Option* policy_opt = nullptr;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* mu_opt = nullptr;
  CLI::Option* tau_opt = nullptr;

  // Nothing here is marked required at parse time: a config file may supply
  // any of these, so presence is enforced in build() after the merge.
  void attach(CLI::App* sub) {
    policy_opt =
        sub->add_option("--policy", policy, "Server policy: mbt, dad, or rad");
    lambda_opt = sub->add_option("--lambda", lambda,
                                 "Per-slot update generation probability");
    alpha_opt =
        sub->add_option("--alpha", alpha, "MBT admission probability");
    mu_opt = sub->add_option("--mu", mu,
                             "MBT/RAD per-slot transmission probability");
    tau_opt = sub->add_option("--tau", tau, "DAD inter-dump period, slots");
  }

  // `fallback_lambda` engages when --lambda was not given (leakage results
  // never depend on it).
  PolicySpec build(std::optional<double> fallback_lambda = std::nullopt) const {
    PolicySpec spec;
    if (policy_opt->count() == 0) {
      ageleak::throw_error(ErrorCode::kMissingField, "policy",
                           "--policy is required");
    }
    const std::optional<PolicyKind> kind = ageleak::policy_kind_from_name(policy);
    if (!kind) {
      ageleak::throw_error(ErrorCode::kUnsupportedPolicy, "policy",
                           "unknown policy '" + policy +
                               "', expected mbt, dad, or rad");
    }
    spec.kind = *kind;
    if (lambda_opt->count() > 0) {
      spec.lambda = lambda;
    } else if (fallback_lambda) {
      spec.lambda = *fallback_lambda;
    } else {
      ageleak::throw_error(ErrorCode::kMissingField, "lambda",
                           "--lambda is required");
    }
    if (alpha_opt->count() > 0) spec.alpha = alpha;
    if (mu_opt->count() > 0) spec.mu = mu;
    if (tau_opt->count() > 0) spec.tau = tau;
    return ageleak::validate_policy(spec);
  }
};

OutputRecord base_record(const PolicySpec& policy) {
  OutputRecord record;
  record.policy = ageleak::to_string(policy.kind);
  record.lambda = policy.lambda;
  record.alpha = policy.alpha;
  record.mu = policy.mu;
  record.tau = policy.tau;
  return record;
}

void append_param(std::string* meta, const std::string& key,
                  const std::string& value) {
  *meta += " " + key + "=" + value;
}

void print_records(const std::string& meta,
                   const std::vector<OutputRecord>& records) {
  std::string text = "# " + meta + "\n" + ageleak::csv_header() + "\n";
  for (const OutputRecord& record : records) {
    text += ageleak::to_csv_row(record) + "\n";
  }
  std::fputs(text.c_str(), stdout);
}

// --config merge. Keys mirror the long flag names without the dashes; a key
// whose flag was given on the command line is skipped, so flags win. Values
// go through the option's own parser, which keeps presence semantics (count)
// identical to a command-line flag.
void apply_config_file(const std::string& path,
                       const std::map<std::string, CLI::Option*>& table) {
  std::ifstream in(path);
  if (!in) {
    ageleak::throw_error(ErrorCode::kIo, "config",
                         "cannot read '" + path + "'");
  }
  const auto trim = [](const std::string& text) {
    const std::size_t first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const std::size_t last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      ageleak::throw_error(ErrorCode::kIo, "config",
                           "line " + std::to_string(lineno) +
                               ": expected key=value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const auto entry = table.find(key);
    if (entry == table.end()) {
      ageleak::throw_error(ErrorCode::kExtraneousField, key,
                           "unknown config key at line " +
                               std::to_string(lineno));
    }
    if (entry->second->count() > 0) continue;
    try {
      entry->second->add_result(value);
      entry->second->run_callback();
    } catch (const CLI::ParseError&) {
      ageleak::throw_error(ErrorCode::kOutOfRange, key,
                           "bad config value '" + value + "' at line " +
                               std::to_string(lineno));
    }
  }
}

std::string meta_prefix(const std::string& command) {
  return std::string(ageleak::kToolName) + " " +
         std::string(ageleak::kToolVersion) + " " + command;
}

void append_policy_params(std::string* meta, const PolicySpec& policy,
                          bool lambda_given) {
  append_param(meta, "policy", ageleak::to_string(policy.kind));
  if (lambda_given) append_param(meta, "lambda", format_number(policy.lambda));
  if (policy.alpha) append_param(meta, "alpha", format_number(*policy.alpha));
  if (policy.mu) append_param(meta, "mu", format_number(*policy.mu));
  if (policy.tau) append_param(meta, "tau", std::to_string(*policy.tau));
}

int cmd_analytic(const PolicyFlags& flags) {
  const PolicySpec policy = flags.build();
  ageleak::AgeFormulaResult age;
  switch (policy.kind) {
    case PolicyKind::kMbt:
      age = ageleak::aoi_mbt(policy.lambda, *policy.alpha, *policy.mu);
      break;
    case PolicyKind::kDad:
      age = ageleak::aoi_dad(policy.lambda, *policy.tau);
      break;
    case PolicyKind::kRad:
      age = ageleak::aoi_rad(policy.lambda, *policy.mu);
      break;
  }
  const double rate = ageleak::analytic_leakage_rate(policy);
  OutputRecord record = base_record(policy);
  record.leakage_rate_nats = rate;
  record.leakage_rate_bits = rate / kLn2;
  record.age_slots = age.age_slots;
  record.source = "analytic";
  if (policy.kind == PolicyKind::kMbt && *policy.alpha < 1.0) {
    record.note = kAlphaCaveat;
  }
  std::string meta = meta_prefix("analytic");
  append_policy_params(&meta, policy, true);
  print_records(meta, {record});
  return 0;
}

int cmd_simulate(const PolicyFlags& flags, std::int64_t slots,
                 std::int64_t warmup, std::uint64_t seed) {
  ageleak::SimConfig config;
  config.policy = flags.build();
  config.horizon = slots;
  config.warmup = warmup;
  config.seed = seed;
  const ageleak::AgeEstimate estimate = ageleak::simulate_aoi(config);
  OutputRecord record = base_record(config.policy);
  record.slots = slots;
  record.seed = seed;
  record.age_slots = estimate.mean_age;
  record.age_stderr = estimate.std_error;
  record.source = "simulated";
  std::string meta = meta_prefix("simulate");
  append_policy_params(&meta, config.policy, true);
  append_param(&meta, "slots", std::to_string(slots));
  append_param(&meta, "warmup", std::to_string(warmup));
  append_param(&meta, "seed", std::to_string(seed));
  print_records(meta, {record});
  return 0;
}

int cmd_leakage(const PolicyFlags& flags, int n, bool oracle, bool analytic) {
  // Leakage depends on arrivals only through their support, so --lambda is
  // optional here; the placeholder never reaches the output row.
  const bool lambda_given = flags.lambda_opt->count() > 0;
  const PolicySpec policy = flags.build(0.5);
  const bool caveat =
      policy.kind == PolicyKind::kMbt && *policy.alpha < 1.0;

  std::vector<OutputRecord> records;
  std::optional<double> oracle_rate;
  std::optional<double> analytic_rate;
  if (oracle) {
    const ageleak::LeakageReport report =
        ageleak::maximal_leakage_oracle(policy, n);
    oracle_rate = report.leakage_rate_nats;
    OutputRecord record = base_record(policy);
    if (!lambda_given) record.lambda.reset();
    record.n = n;
    record.leakage_rate_nats = report.leakage_rate_nats;
    record.leakage_rate_bits = report.leakage_rate_nats / kLn2;
    record.source = "oracle";
    record.note = "total_nats=" + format_number(report.leakage_nats) +
                  "; support=" + std::to_string(report.support_size);
    if (caveat) record.note += std::string("; ") + kAlphaCaveat;
    records.push_back(record);
  }
  if (analytic) {
    analytic_rate = ageleak::analytic_leakage_rate(policy, n);
    OutputRecord record = base_record(policy);
    if (!lambda_given) record.lambda.reset();
    record.n = n;
    record.leakage_rate_nats = *analytic_rate;
    record.leakage_rate_bits = *analytic_rate / kLn2;
    record.source = "analytic";
    if (caveat) record.note = kAlphaCaveat;
    records.push_back(record);
  }
  if (oracle && analytic) {
    OutputRecord record = base_record(policy);
    if (!lambda_given) record.lambda.reset();
    record.n = n;
    record.leakage_rate_nats = *oracle_rate - *analytic_rate;
    record.leakage_rate_bits = (*oracle_rate - *analytic_rate) / kLn2;
    record.source = "difference";
    record.note = "oracle minus analytic";
    records.push_back(record);
  }
  std::string meta = meta_prefix("leakage");
  append_policy_params(&meta, policy, lambda_given);
  append_param(&meta, "n", std::to_string(n));
  append_param(&meta, "mode",
               oracle && analytic ? "both" : (oracle ? "oracle" : "analytic"));
  print_records(meta, records);
  return 0;
}

int cmd_verify(const std::string& suite_name, const char* argv0) {
  const std::optional<ageleak::Suite> suite =
      ageleak::suite_from_name(suite_name);
  if (!suite) {
    ageleak::throw_error(ErrorCode::kOutOfRange, "suite",
                         "unknown suite '" + suite_name + "'");
  }
  std::string cli_path;
  if (*suite == ageleak::Suite::kAll) {
    // The determinism checks re-invoke this binary.
    std::error_code ec;
    const std::filesystem::path self =
        std::filesystem::read_symlink("/proc/self/exe", ec);
    cli_path = ec ? std::string(argv0) : self.string();
  }
  const std::vector<ageleak::CheckResult> results =
      ageleak::run_suite(*suite, cli_path);
  int failures = 0;
  for (const ageleak::CheckResult& check : results) {
    if (!check.pass) ++failures;
    std::printf("%s %s | %s\n", check.pass ? "PASS" : "FAIL",
                check.name.c_str(), check.detail.c_str());
  }
  std::printf("%zu/%zu checks passed\n", results.size() - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}

std::vector<double> parse_mu_range(const std::string& text) {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
      step <= 0.0 || lo > hi) {
    ageleak::throw_error(ErrorCode::kOutOfRange, "mu-range",
                         "expected lo:hi:step with step > 0 and lo <= hi");
  }
  std::vector<double> grid;
  for (double mu = lo; mu <= hi + 1e-12; mu += step) grid.push_back(mu);
  return grid;
}

std::vector<std::int64_t> parse_tau_range(const std::string& text) {
  long long lo = 0;
  long long hi = 0;
  if (std::sscanf(text.c_str(), "%lld:%lld", &lo, &hi) != 2 || lo < 1 ||
      lo > hi) {
    ageleak::throw_error(ErrorCode::kOutOfRange, "tau-range",
                         "expected lo:hi with 1 <= lo <= hi");
  }
  std::vector<std::int64_t> grid;
  for (long long tau = lo; tau <= hi; ++tau) grid.push_back(tau);
  return grid;
}

OutputRecord record_from_point(const ageleak::TradeoffPoint& point,
                               const std::optional<ageleak::SimOverlay>& overlay) {
  OutputRecord record = base_record(point.policy);
  record.leakage_rate_nats = point.leakage_rate_nats;
  record.leakage_rate_bits = point.leakage_rate_nats / kLn2;
  record.age_slots = point.age_slots;
  record.age_stderr = point.age_std_error;
  record.source = ageleak::to_string(point.source);
  record.note = point.note;
  if (point.source == ageleak::PointSource::kSimulated && overlay) {
    record.slots = overlay->slots;
    record.seed = overlay->seed;
  }
  return record;
}

int cmd_pareto(const std::vector<ageleak::TradeoffPoint>& points,
               const std::optional<ageleak::SimOverlay>& overlay,
               const std::string& meta, const std::string& out_path) {
  std::string text = "# " + meta + "\n" + ageleak::csv_header() + "\n";
  for (const ageleak::TradeoffPoint& point : points) {
    text += ageleak::to_csv_row(record_from_point(point, overlay)) + "\n";
  }
  FILE* file = std::fopen(out_path.c_str(), "wb");
  if (file == nullptr) {
    ageleak::throw_error(ErrorCode::kIo, "out",
                         "cannot open '" + out_path + "' for writing");
  }
  const std::size_t written = std::fwrite(text.data(), 1, text.size(), file);
  const bool ok = written == text.size() && std::fclose(file) == 0;
  if (!ok) {
    ageleak::throw_error(ErrorCode::kIo, "out",
                         "short write to '" + out_path + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age and leakage analysis of slotted status-update policies"};
  app.require_subcommand(1);

  std::string config_path;
  const char* config_help = "Read key=value defaults from a file";

  // --- analytic ---
  CLI::App* analytic = app.add_subcommand(
      "analytic", "Closed-form mean age and leakage rate for one policy");
  PolicyFlags analytic_flags;
  analytic_flags.attach(analytic);
  analytic->add_option("--config", config_path, config_help);
  const std::map<std::string, CLI::Option*> analytic_table = {
      {"policy", analytic_flags.policy_opt},
      {"lambda", analytic_flags.lambda_opt},
      {"alpha", analytic_flags.alpha_opt},
      {"mu", analytic_flags.mu_opt},
      {"tau", analytic_flags.tau_opt},
  };

  // --- simulate ---
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo mean age for one policy");
  PolicyFlags simulate_flags;
  simulate_flags.attach(simulate);
  std::int64_t sim_slots = 1'000'000;
  std::int64_t sim_warmup = 10'000;
  std::uint64_t sim_seed = 0;
  CLI::Option* sim_slots_opt = simulate->add_option(
      "--slots", sim_slots, "Simulated slots (default 10^6)");
  CLI::Option* sim_warmup_opt = simulate->add_option(
      "--warmup", sim_warmup, "Slots discarded before measuring (default 10^4)");
  CLI::Option* sim_seed_opt =
      simulate->add_option("--seed", sim_seed, "Random seed (default 0)");
  simulate->add_option("--config", config_path, config_help);
  const std::map<std::string, CLI::Option*> simulate_table = {
      {"policy", simulate_flags.policy_opt},
      {"lambda", simulate_flags.lambda_opt},
      {"alpha", simulate_flags.alpha_opt},
      {"mu", simulate_flags.mu_opt},
      {"tau", simulate_flags.tau_opt},
      {"slots", sim_slots_opt},
      {"warmup", sim_warmup_opt},
      {"seed", sim_seed_opt},
  };

  // --- leakage ---
  CLI::App* leakage = app.add_subcommand(
      "leakage", "Exact and closed-form maximal leakage over n slots");
  PolicyFlags leakage_flags;
  leakage_flags.attach(leakage);
  int leakage_n = 0;
  CLI::Option* leakage_n_opt =
      leakage->add_option("--n", leakage_n, "Block length in slots");
  bool mode_oracle = false;
  bool mode_analytic = false;
  bool mode_both = false;
  CLI::Option* oracle_flag = leakage->add_flag(
      "--oracle", mode_oracle, "Exact enumeration over all 2^n inputs");
  CLI::Option* analytic_flag = leakage->add_flag(
      "--analytic", mode_analytic, "Closed-form rate");
  CLI::Option* both_flag = leakage->add_flag(
      "--both", mode_both, "Oracle, closed form, and their difference (default)");
  oracle_flag->excludes(analytic_flag);
  oracle_flag->excludes(both_flag);
  analytic_flag->excludes(both_flag);
  leakage->add_option("--config", config_path, config_help);
  const std::map<std::string, CLI::Option*> leakage_table = {
      {"policy", leakage_flags.policy_opt},
      {"lambda", leakage_flags.lambda_opt},
      {"alpha", leakage_flags.alpha_opt},
      {"mu", leakage_flags.mu_opt},
      {"tau", leakage_flags.tau_opt},
      {"n", leakage_n_opt},
      {"oracle", oracle_flag},
      {"analytic", analytic_flag},
      {"both", both_flag},
  };

  // --- verify ---
  CLI::App* verify = app.add_subcommand(
      "verify", "Run a cross-check suite; exit 1 on any failure");
  std::string suite_name;
  CLI::Option* suite_opt = verify->add_option(
      "--suite", suite_name,
      "One of: lemma1, lemma2, theorem1, theorem2, theorem3, "
      "geoage, renewal, decomposition, all");
  verify->add_option("--config", config_path, config_help);
  const std::map<std::string, CLI::Option*> verify_table = {
      {"suite", suite_opt},
  };

  // --- pareto ---
  CLI::App* pareto = app.add_subcommand(
      "pareto", "Write an age-vs-leakage trade-off dataset as CSV");
  std::string figure_name;
  CLI::Option* figure_opt = pareto->add_option(
      "--figure", figure_name, "Stock dataset: fig2, fig3, or fig4");
  std::string pareto_policy;
  CLI::Option* pareto_policy_opt = pareto->add_option(
      "--policy", pareto_policy, "Sweep policy: mbt, dad, or rad");
  double pareto_lambda = 0.5;
  CLI::Option* pareto_lambda_opt = pareto->add_option(
      "--lambda", pareto_lambda,
      "Arrival rate (sweeps default to 0.5; overrides a figure's rate set)");
  std::string mu_range_text;
  CLI::Option* mu_range_opt = pareto->add_option(
      "--mu-range", mu_range_text, "MBT/RAD grid as lo:hi:step");
  std::string tau_range_text;
  CLI::Option* tau_range_opt = pareto->add_option(
      "--tau-range", tau_range_text, "DAD grid as lo:hi");
  double pareto_alpha = 1.0;
  CLI::Option* pareto_alpha_opt = pareto->add_option(
      "--alpha", pareto_alpha, "Fixed MBT admission probability (default 1)");
  bool pareto_optimize = false;
  CLI::Option* pareto_optimize_opt =
      pareto->add_flag("--optimize-alpha", pareto_optimize,
                       "Minimize MBT age over alpha at each mu");
  bool pareto_sim = false;
  CLI::Option* pareto_sim_opt = pareto->add_flag(
      "--sim", pareto_sim, "Add a simulated sibling row per analytic point");
  std::int64_t pareto_slots = 1'000'000;
  std::int64_t pareto_warmup = 10'000;
  std::uint64_t pareto_seed = 0;
  CLI::Option* pareto_slots_opt = pareto->add_option(
      "--slots", pareto_slots, "Simulated slots per overlay row (default 10^6)");
  CLI::Option* pareto_warmup_opt = pareto->add_option(
      "--warmup", pareto_warmup, "Warmup slots per overlay row (default 10^4)");
  CLI::Option* pareto_seed_opt = pareto->add_option(
      "--seed", pareto_seed, "Overlay random seed (default 0)");
  std::string out_path;
  CLI::Option* out_opt =
      pareto->add_option("--out", out_path, "Output CSV path");
  pareto->add_option("--config", config_path, config_help);
  const std::map<std::string, CLI::Option*> pareto_table = {
      {"figure", figure_opt},
      {"policy", pareto_policy_opt},
      {"lambda", pareto_lambda_opt},
      {"mu-range", mu_range_opt},
      {"tau-range", tau_range_opt},
      {"alpha", pareto_alpha_opt},
      {"optimize-alpha", pareto_optimize_opt},
      {"sim", pareto_sim_opt},
      {"slots", pareto_slots_opt},
      {"warmup", pareto_warmup_opt},
      {"seed", pareto_seed_opt},
      {"out", out_opt},
  };
  figure_opt->excludes(pareto_policy_opt);
  figure_opt->excludes(mu_range_opt);
  figure_opt->excludes(tau_range_opt);
  figure_opt->excludes(pareto_alpha_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) {
      if (analytic->parsed()) apply_config_file(config_path, analytic_table);
      if (simulate->parsed()) apply_config_file(config_path, simulate_table);
      if (leakage->parsed()) apply_config_file(config_path, leakage_table);
      if (verify->parsed()) apply_config_file(config_path, verify_table);
      if (pareto->parsed()) apply_config_file(config_path, pareto_table);
    }
    if (analytic->parsed()) return cmd_analytic(analytic_flags);
    if (simulate->parsed()) {
      return cmd_simulate(simulate_flags, sim_slots, sim_warmup, sim_seed);
    }
    if (leakage->parsed()) {
      if (leakage_n_opt->count() == 0) {
        ageleak::throw_error(ErrorCode::kMissingField, "n",
                             "--n is required");
      }
      if ((mode_oracle ? 1 : 0) + (mode_analytic ? 1 : 0) +
              (mode_both ? 1 : 0) >
          1) {
        ageleak::throw_error(ErrorCode::kExtraneousField, "mode",
                             "pick one of --oracle, --analytic, --both");
      }
      const bool both = mode_both || (!mode_oracle && !mode_analytic);
      return cmd_leakage(leakage_flags, leakage_n, both || mode_oracle,
                         both || mode_analytic);
    }
    if (verify->parsed()) {
      if (suite_opt->count() == 0) {
        ageleak::throw_error(ErrorCode::kMissingField, "suite",
                             "--suite is required");
      }
      return cmd_verify(suite_name, argv[0]);
    }
    if (pareto->parsed()) {
      if (out_opt->count() == 0) {
        ageleak::throw_error(ErrorCode::kMissingField, "out",
                             "--out is required");
      }
      if (figure_opt->count() > 0 &&
          (pareto_policy_opt->count() > 0 || mu_range_opt->count() > 0 ||
           tau_range_opt->count() > 0 || pareto_alpha_opt->count() > 0)) {
        ageleak::throw_error(ErrorCode::kExtraneousField, "figure",
                             "a figure dataset takes no sweep flags");
      }
      std::vector<ageleak::TradeoffPoint> points;
      std::optional<ageleak::SimOverlay> overlay;
      std::string meta = meta_prefix("pareto");
      if (figure_opt->count() > 0) {
        const std::optional<ageleak::Figure> figure =
            ageleak::figure_from_name(figure_name);
        if (!figure) {
          ageleak::throw_error(ErrorCode::kOutOfRange, "figure",
                               "unknown figure '" + figure_name +
                                   "', expected fig2, fig3, or fig4");
        }
        ageleak::FigOverrides overrides;
        if (pareto_lambda_opt->count() > 0) overrides.lambda = pareto_lambda;
        points = ageleak::fig_dataset(*figure, overrides);
        append_param(&meta, "figure", figure_name);
        if (overrides.lambda) {
          append_param(&meta, "lambda", format_number(*overrides.lambda));
        }
      } else {
        if (pareto_policy_opt->count() == 0) {
          ageleak::throw_error(ErrorCode::kMissingField, "policy",
                               "pass --figure or a --policy sweep");
        }
        const std::optional<PolicyKind> kind =
            ageleak::policy_kind_from_name(pareto_policy);
        if (!kind) {
          ageleak::throw_error(ErrorCode::kUnsupportedPolicy, "policy",
                               "unknown policy '" + pareto_policy +
                                   "', expected mbt, dad, or rad");
        }
        ageleak::SweepSpec sweep;
        sweep.kind = *kind;
        sweep.lambda = pareto_lambda;
        sweep.alpha = pareto_alpha;
        sweep.optimize_alpha = pareto_optimize;
        if (*kind == PolicyKind::kDad) {
          if (tau_range_opt->count() == 0) {
            ageleak::throw_error(ErrorCode::kMissingField, "tau-range",
                                 "--tau-range is required for a dad sweep");
          }
          sweep.tau_grid = parse_tau_range(tau_range_text);
        } else {
          if (mu_range_opt->count() == 0) {
            ageleak::throw_error(ErrorCode::kMissingField, "mu-range",
                                 "--mu-range is required for mbt/rad sweeps");
          }
          sweep.mu_grid = parse_mu_range(mu_range_text);
        }
        if (pareto_sim) {
          overlay.emplace();
          overlay->slots = pareto_slots;
          overlay->warmup = pareto_warmup;
          overlay->seed = pareto_seed;
          sweep.sim_overlay = overlay;
        }
        points = ageleak::pareto_sweep(sweep);
        append_param(&meta, "policy", ageleak::to_string(*kind));
        append_param(&meta, "lambda", format_number(sweep.lambda));
        if (!sweep.tau_grid.empty()) {
          append_param(&meta, "tau-range", tau_range_text);
        }
        if (!sweep.mu_grid.empty()) {
          append_param(&meta, "mu-range", mu_range_text);
          if (sweep.optimize_alpha) {
            append_param(&meta, "optimize-alpha", "1");
          } else if (*kind == PolicyKind::kMbt) {
            append_param(&meta, "alpha", format_number(sweep.alpha));
          }
        }
        if (overlay) {
          append_param(&meta, "sim-slots", std::to_string(overlay->slots));
          append_param(&meta, "sim-warmup", std::to_string(overlay->warmup));
          append_param(&meta, "sim-seed", std::to_string(overlay->seed));
        }
      }
      return cmd_pareto(points, overlay, meta, out_path);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "ageleak: %s\n", e.what());
    return e.code() == ErrorCode::kUnstable ? 3 : 2;
  }
  return 2;
}
