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

#include "ageleak/leakage.h"

#include <cmath>
#include <cstring>

#include "ageleak/error.h"

namespace ageleak {

namespace {

// Raw per-policy P(y|x) kernels over bit arrays. These sit in the middle of
// 4^n enumeration loops, so they take decoded bits and avoid allocation;
// conditional_pmf validates and dispatches.

// Forward DP over queue length conditioned on the y-prefix. w[l] is the
// probability of reaching this slot with queue length l while emitting the
// y-prefix seen so far; each slot applies the admission branch, then the
// service branch matched against y.
double pmf_mbt(const std::uint8_t* x, const std::uint8_t* y, int n,
               double alpha, double mu) {
  double w[kMaxPmfN + 2] = {0.0};
  w[0] = 1.0;
  int max_len = 0;
  for (int t = 0; t < n; ++t) {
    if (x[t]) {
      for (int l = max_len; l >= 0; --l) {
        w[l + 1] += alpha * w[l];
        w[l] *= 1.0 - alpha;
      }
      ++max_len;
    }
    if (y[t]) {
      // A send needs a nonempty queue; the empty state's weight dies.
      for (int l = 0; l <= max_len; ++l) {
        w[l] = mu * w[l + 1];
      }
      if (max_len > 0) --max_len;
      else return 0.0;  // w[] is all zero already; cut the remaining slots
    } else {
      for (int l = 1; l <= max_len; ++l) {
        w[l] *= 1.0 - mu;
      }
    }
  }
  double total = 0.0;
  for (int l = 0; l <= max_len; ++l) {
    total += w[l];
  }
  return total;
}

// Same DP idea with buffer occupancy in {0,1}: fill on arrival, send with
// probability mu when occupied, clear on send.
double pmf_rad(const std::uint8_t* x, const std::uint8_t* y, int n,
               double mu) {
  double w_empty = 1.0;
  double w_full = 0.0;
  for (int t = 0; t < n; ++t) {
    if (x[t]) {
      w_full += w_empty;
      w_empty = 0.0;
    }
    if (y[t]) {
      w_empty = mu * w_full;
      w_full = 0.0;
      if (w_empty == 0.0) return 0.0;
    } else {
      w_full *= 1.0 - mu;
    }
  }
  return w_empty + w_full;
}

// Deterministic image comparison, streamed slot by slot with early exit.
double pmf_dad(const std::uint8_t* x, const std::uint8_t* y, int n,
               std::int64_t tau) {
  bool stored = false;
  std::int64_t slot_in_cycle = 1;
  for (int t = 0; t < n; ++t) {
    if (x[t]) stored = true;
    std::uint8_t out = 0;
    if (slot_in_cycle == tau) {
      out = stored ? 1 : 0;
      stored = false;
      slot_in_cycle = 1;
    } else {
      ++slot_in_cycle;
    }
    if (out != y[t]) return 0.0;
  }
  return 1.0;
}

double pmf_dispatch(const PolicySpec& policy, const std::uint8_t* x,
                    const std::uint8_t* y, int n) {
  switch (policy.kind) {
    case PolicyKind::kMbt:
      return pmf_mbt(x, y, n, *policy.alpha, *policy.mu);
    case PolicyKind::kRad:
      return pmf_rad(x, y, n, *policy.mu);
    case PolicyKind::kDad:
      return pmf_dad(x, y, n, *policy.tau);
  }
  return 0.0;
}

void decode_bits(std::uint64_t index, int n, std::uint8_t* out) {
  for (int i = 0; i < n; ++i) {
    out[i] = static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1u);
  }
}

// Ascending x index is lexicographic order, so a strict improvement test
// leaves the lexicographically smallest maximizer in place.
MaxConditional max_over_inputs(const PolicySpec& policy,
                               const std::uint8_t* y, int n) {
  std::uint8_t xb[kMaxPmfN] = {0};
  MaxConditional best;
  best.value = -1.0;
  std::uint64_t best_index = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t xi = 0; xi < count; ++xi) {
    decode_bits(xi, n, xb);
    const double p = pmf_dispatch(policy, xb, y, n);
    if (p > best.value) {
      best.value = p;
      best_index = xi;
    }
  }
  best.witness = BitSeq::from_index(n, best_index);
  return best;
}

}  // namespace

double conditional_pmf(const PolicySpec& policy, const BitSeq& x,
                       const BitSeq& y) {
  validate_policy(policy);
  if (x.size() != y.size()) {
    throw_error(ErrorCode::kLengthMismatch, "y",
                "input and output sequences must have equal length");
  }
  if (x.size() > kMaxPmfN) {
    throw_error(ErrorCode::kTooLarge, "n", "conditional pmf supports n <= 16");
  }
  return pmf_dispatch(policy, x.bits().data(), y.bits().data(), x.size());
}

double ConditionalPmfTable::entry(std::uint64_t x_index,
                                  std::uint64_t y_index) const {
  const std::uint64_t count = std::uint64_t{1} << n;
  return entries[x_index * count + y_index];
}

ConditionalPmfTable conditional_pmf_table(const PolicySpec& policy, int n) {
  validate_policy(policy);
  if (n < 1 || n > kMaxTableN) {
    throw_error(ErrorCode::kTooLarge, "n", "dense table supports n <= 8");
  }
  ConditionalPmfTable table;
  table.n = n;
  table.policy = policy;
  const std::uint64_t count = std::uint64_t{1} << n;
  table.entries.resize(count * count);
  std::uint8_t xb[kMaxPmfN] = {0};
  std::uint8_t yb[kMaxPmfN] = {0};
  for (std::uint64_t xi = 0; xi < count; ++xi) {
    decode_bits(xi, n, xb);
    for (std::uint64_t yi = 0; yi < count; ++yi) {
      decode_bits(yi, n, yb);
      table.entries[xi * count + yi] = pmf_dispatch(policy, xb, yb, n);
    }
  }
  return table;
}

MaxConditional max_conditional(const PolicySpec& policy, const BitSeq& y) {
  validate_policy(policy);
  if (y.size() > kMaxOracleN) {
    throw_error(ErrorCode::kTooLarge, "n",
                "input enumeration supports n <= 12");
  }
  return max_over_inputs(policy, y.bits().data(), y.size());
}

LeakageReport maximal_leakage_oracle(const PolicySpec& policy, int n) {
  validate_policy(policy);
  if (n < 1 || n > kMaxOracleN) {
    throw_error(ErrorCode::kTooLarge, "n", "oracle supports n <= 12");
  }
  LeakageReport report;
  report.n = n;
  std::uint8_t yb[kMaxPmfN] = {0};
  const std::uint64_t count = std::uint64_t{1} << n;
  double sum = 0.0;
  for (std::uint64_t yi = 0; yi < count; ++yi) {
    decode_bits(yi, n, yb);
    MaxConditional best = max_over_inputs(policy, yb, n);
    if (best.value > 0.0) {
      sum += best.value;
      report.per_output.emplace(yi, std::move(best));
    }
  }
  report.support_size = static_cast<std::int64_t>(report.per_output.size());
  report.leakage_nats = std::log(sum);
  report.leakage_rate_nats = report.leakage_nats / n;
  return report;
}

double analytic_leakage_rate(const PolicySpec& policy, std::optional<int> n) {
  validate_policy(policy);
  switch (policy.kind) {
    case PolicyKind::kMbt:
    case PolicyKind::kRad:
      return std::log1p(*policy.mu);
    case PolicyKind::kDad:
      if (n.has_value()) {
        if (*n < 1) {
          throw_error(ErrorCode::kOutOfRange, "n", "must be >= 1");
        }
        const double blocks = static_cast<double>(*n / *policy.tau);
        return blocks * std::log(2.0) / static_cast<double>(*n);
      }
      return std::log(2.0) / static_cast<double>(*policy.tau);
  }
  return 0.0;
}

Lemma1Report verify_lemma1(const PolicySpec& policy, int n) {
  validate_policy(policy);
  const bool mbt_full_admission =
      policy.kind == PolicyKind::kMbt && *policy.alpha == 1.0;
  if (!mbt_full_admission && policy.kind != PolicyKind::kRad) {
    throw_error(ErrorCode::kUnsupportedPolicy, "policy",
                "pointwise max law covers MBT with alpha = 1 and RAD only");
  }
  if (n < 1 || n > kMaxSweepN) {
    throw_error(ErrorCode::kTooLarge, "n",
                "exhaustive output sweep supports n <= 10");
  }
  const double mu = *policy.mu;
  Lemma1Report report;
  report.holds = true;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::uint8_t yb[kMaxPmfN] = {0};
  for (std::uint64_t yi = 0; yi < count; ++yi) {
    decode_bits(yi, n, yb);
    int ones = 0;
    for (int i = 0; i < n; ++i) ones += yb[i];
    const double expected = std::pow(mu, ones);
    const MaxConditional best = max_over_inputs(policy, yb, n);
    // x = y must attain the maximum (witness may differ under ties).
    const double at_y = pmf_dispatch(policy, yb, yb, n);
    if (std::fabs(best.value - expected) > 1e-9 ||
        std::fabs(at_y - best.value) > 1e-9) {
      report.holds = false;
      report.counterexamples.push_back(Lemma1Counterexample{
          BitSeq::from_index(n, yi), best.value, expected, at_y});
    }
  }
  return report;
}

std::int64_t dad_support_size(std::int64_t n, std::int64_t tau) {
  if (n < 1) {
    throw_error(ErrorCode::kOutOfRange, "n", "must be >= 1");
  }
  if (tau < 1) {
    throw_error(ErrorCode::kOutOfRange, "tau", "must be >= 1");
  }
  const std::int64_t blocks = n / tau;
  if (blocks > 62) {
    throw_error(ErrorCode::kTooLarge, "n", "support size exceeds 2^62");
  }
  return std::int64_t{1} << blocks;
}

}  // namespace ageleak
