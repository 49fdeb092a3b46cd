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

// Reference implementations the tests trust instead of the library's own
// code paths. Deliberately written in the most naive style available:
// explicit branching over every coin outcome, direct summation, exhaustive
// grids. Slow is fine here; independence from src/ is the point.

#ifndef AGELEAK_TESTS_ORACLE_HELPERS_H_
#define AGELEAK_TESTS_ORACLE_HELPERS_H_

#include <cstdint>
#include <map>
#include <vector>

#include "ageleak/age.h"
#include "ageleak/bitseq.h"
#include "ageleak/policies.h"
#include "ageleak/policy.h"
#include "ageleak/rng.h"

namespace testref {

inline std::vector<int> to_bits(const ageleak::BitSeq& seq) {
  std::vector<int> bits(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) bits[i] = seq[i] ? 1 : 0;
  return bits;
}

// P(y|x) for the FCFS queue by branching on each admission and each service
// coin in turn; a path dies the moment it disagrees with y.
inline double mbt_path_sum(double alpha, double mu, const std::vector<int>& x,
                           const std::vector<int>& y, std::size_t t,
                           int queue_len) {
  if (t == x.size()) return 1.0;
  double total = 0.0;
  const int branches = x[t] ? 2 : 1;
  for (int admit = 0; admit < branches; ++admit) {
    const double admit_prob = x[t] ? (admit == 0 ? alpha : 1.0 - alpha) : 1.0;
    const int queue = queue_len + (x[t] && admit == 0 ? 1 : 0);
    if (queue > 0) {
      if (y[t]) {
        total += admit_prob * mu * mbt_path_sum(alpha, mu, x, y, t + 1,
                                                queue - 1);
      } else {
        total += admit_prob * (1.0 - mu) * mbt_path_sum(alpha, mu, x, y,
                                                        t + 1, queue);
      }
    } else if (!y[t]) {
      total += admit_prob * mbt_path_sum(alpha, mu, x, y, t + 1, 0);
    }
  }
  return total;
}

inline double ref_mbt_pmf(double alpha, double mu, const ageleak::BitSeq& x,
                          const ageleak::BitSeq& y) {
  return mbt_path_sum(alpha, mu, to_bits(x), to_bits(y), 0, 0);
}

inline double rad_path_sum(double mu, const std::vector<int>& x,
                           const std::vector<int>& y, std::size_t t,
                           bool stored) {
  if (t == x.size()) return 1.0;
  const bool has = stored || x[t] != 0;
  if (!has) {
    return y[t] ? 0.0 : rad_path_sum(mu, x, y, t + 1, false);
  }
  if (y[t]) return mu * rad_path_sum(mu, x, y, t + 1, false);
  return (1.0 - mu) * rad_path_sum(mu, x, y, t + 1, true);
}

inline double ref_rad_pmf(double mu, const ageleak::BitSeq& x,
                          const ageleak::BitSeq& y) {
  return rad_path_sum(mu, to_bits(x), to_bits(y), 0, false);
}

// The deterministic dump image: buffer occupancy only.
inline std::vector<int> ref_dad_image(std::int64_t tau,
                                      const std::vector<int>& x) {
  std::vector<int> y(x.size(), 0);
  bool stored = false;
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t]) stored = true;
    if ((static_cast<std::int64_t>(t) + 1) % tau == 0) {
      y[t] = stored ? 1 : 0;
      stored = false;
    }
  }
  return y;
}

inline double ref_dad_pmf(std::int64_t tau, const ageleak::BitSeq& x,
                          const ageleak::BitSeq& y) {
  return ref_dad_image(tau, to_bits(x)) == to_bits(y) ? 1.0 : 0.0;
}

inline double ref_pmf(const ageleak::PolicySpec& policy,
                      const ageleak::BitSeq& x, const ageleak::BitSeq& y) {
  switch (policy.kind) {
    case ageleak::PolicyKind::kMbt:
      return ref_mbt_pmf(*policy.alpha, *policy.mu, x, y);
    case ageleak::PolicyKind::kDad:
      return ref_dad_pmf(*policy.tau, x, y);
    case ageleak::PolicyKind::kRad:
      return ref_rad_pmf(*policy.mu, x, y);
  }
  return 0.0;
}

// Monte Carlo estimate of P(y|x) by actually running the policy machinery;
// ties the closed-form channel to the executable dynamics.
inline double mc_pmf(const ageleak::PolicySpec& policy,
                     const ageleak::BitSeq& x, const ageleak::BitSeq& y,
                     int trials, std::uint64_t seed) {
  ageleak::RngStream admissions(seed, ageleak::Stream::kAdmissions);
  ageleak::RngStream services(seed, ageleak::Stream::kServices);
  int hits = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const ageleak::RunResult run =
        ageleak::run_policy(policy, x, admissions, services);
    if (run.y == y) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

// Mean of the renewal-age distribution by direct truncated summation of
// z * P(Z = z); the truncation point is where the tail stops mattering.
inline double ref_renewal_mean(const ageleak::InterArrivalModel& model) {
  double mean = 0.0;
  for (std::int64_t z = 1; z < 100000; ++z) {
    const double tail = model.tail(z);
    if (tail < 1e-15 && z > 1) break;
    mean += static_cast<double>(z) * ageleak::renewal_age_pmf(model, z);
  }
  return mean;
}

// Best MBT age over an exhaustive alpha grid; the optimizer under test must
// do at least this well (up to the grid resolution).
inline double ref_grid_age(double lambda, double mu, int steps = 10000) {
  double best = 1e300;
  for (int k = 1; k <= steps; ++k) {
    const double alpha = static_cast<double>(k) / static_cast<double>(steps);
    if (alpha * lambda >= mu && !(alpha * lambda == 1.0 && mu == 1.0)) break;
    const double age = ageleak::aoi_mbt(lambda, alpha, mu).age_slots;
    if (age < best) best = age;
  }
  return best;
}

}  // namespace testref

#endif  // AGELEAK_TESTS_ORACLE_HELPERS_H_
