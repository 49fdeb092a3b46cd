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

#ifndef AGELEAK_LEAKAGE_H_
#define AGELEAK_LEAKAGE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ageleak/bitseq.h"
#include "ageleak/policy.h"

namespace ageleak {

// Maximal leakage of the departure sequence about the arrival sequence:
//
//   L(X^n -> Y^n) = ln sum_{y in supp(Y)} max_x P(y | x)
//
// computed two independent ways: a closed-form rate per policy, and an exact
// brute-force enumeration over all 2^n inputs and outputs with P(y|x)
// evaluated by forward dynamic programming over server state. The value
// depends on the arrival process only through its support, so none of these
// operations consume lambda; they are valid for any full-support source and
// remain well defined (as enumeration over the same support) at lambda = 1.

// Enumeration caps. The oracle visits 4^n (x, y) pairs; exhaustive invariant
// sweeps add another factor and get a tighter cap.
inline constexpr int kMaxOracleN = 12;
inline constexpr int kMaxSweepN = 10;
inline constexpr int kMaxPmfN = 16;
inline constexpr int kMaxTableN = 8;

// Exact P(Y^n = y | X^n = x) for one policy. DP state: MBT keeps a weight
// vector over queue length conditioned on the y-prefix (admit with
// probability alpha on arrival slots, then match y_t against serving the
// head with probability mu); RAD keeps buffer occupancy in {0,1}; DAD is
// deterministic, so the value is 1 or 0 by comparing y against the image of
// x. lambda plays no role. Lengths must match, n <= 16.
double conditional_pmf(const PolicySpec& policy, const BitSeq& x,
                       const BitSeq& y);

// The full induced channel as a dense table; x-major indexing by the BitSeq
// enumeration order. Only for table-level checks, hence the small cap.
struct ConditionalPmfTable {
  int n = 0;
  PolicySpec policy;
  // entry(x_index, y_index), row-major in x.
  std::vector<double> entries;
  double entry(std::uint64_t x_index, std::uint64_t y_index) const;
};
ConditionalPmfTable conditional_pmf_table(const PolicySpec& policy, int n);

struct MaxConditional {
  double value = 0.0;
  BitSeq witness;  // lexicographically smallest argmax
};

// max over all x in {0,1}^n of conditional_pmf(policy, x, y), with the
// lexicographically smallest maximizer as witness. n <= 12.
MaxConditional max_conditional(const PolicySpec& policy, const BitSeq& y);

struct LeakageReport {
  int n = 0;
  double leakage_nats = 0.0;
  double leakage_rate_nats = 0.0;
  // y -> (max_x P(y|x), lexicographically smallest witness x); only outputs
  // with positive max probability appear.
  std::map<std::uint64_t, MaxConditional> per_output;
  std::int64_t support_size = 0;
};

// Exact leakage by exhaustive enumeration. n <= 12.
LeakageReport maximal_leakage_oracle(const PolicySpec& policy, int n);

// Closed-form rate in nats per slot: ln(1+mu) for MBT/RAD; for DAD,
// floor(n/tau)*ln2/n when n is given, else the asymptotic ln2/tau. The MBT
// form is established only for alpha = 1; callers surface alpha < 1 values
// as exploratory data.
double analytic_leakage_rate(const PolicySpec& policy,
                             std::optional<int> n = std::nullopt);

struct Lemma1Counterexample {
  BitSeq y;
  double max_value = 0.0;
  double expected = 0.0;       // mu^(ones in y)
  double value_at_x_eq_y = 0.0;
};

struct Lemma1Report {
  bool holds = false;
  std::vector<Lemma1Counterexample> counterexamples;
};

// For every y in {0,1}^n checks that max_conditional(y).value equals
// mu^(ones in y) and that x = y attains it. Only MBT with alpha = 1 and RAD
// qualify; anything else is UnsupportedPolicy. n <= 10.
Lemma1Report verify_lemma1(const PolicySpec& policy, int n);

// 2^floor(n/tau): number of departure sequences with positive probability
// under DAD. Cross-checked against the oracle's enumerated support.
std::int64_t dad_support_size(std::int64_t n, std::int64_t tau);

}  // namespace ageleak

#endif  // AGELEAK_LEAKAGE_H_
