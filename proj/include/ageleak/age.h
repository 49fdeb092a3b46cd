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

#ifndef AGELEAK_AGE_H_
#define AGELEAK_AGE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace ageleak {

// Closed-form age of information, in slots, plus the discrete renewal-age
// machinery behind it. For a renewal process with iid positive inter-renewal
// times Y, the stationary age Z (slots since the last renewal, Z >= 1)
// satisfies P(Z = z) = P(Y >= z) / E[Y] and
// E[Z] = E[Y^2] / (2 E[Y]) + 1/2.

class InterArrivalModel {
 public:
  enum class Kind { kGeometric, kDeterministic, kEmpirical };

  // Support {1, 2, ...}, P(Y = k) = p (1-p)^(k-1); p in (0,1].
  static InterArrivalModel geometric(double p);
  // Y = gap surely; gap >= 1.
  static InterArrivalModel deterministic(std::int64_t gap);
  // Arbitrary pmf on positive integers summing to 1 within 1e-9; used to
  // feed measured inter-sample histograms back through the renewal formulas.
  static InterArrivalModel empirical(
      const std::map<std::int64_t, double>& pmf);

  Kind kind() const { return kind_; }
  double mean() const;
  double second_moment() const;
  // P(Y >= z) for z >= 1.
  double tail(std::int64_t z) const;

  // Extended-precision moments. renewal_mean_age must cancel algebraically
  // (the geometric model's E[Z] = 1/p identity is asserted bit-for-bit), and
  // binary64 intermediates provably fail that on part of the parameter
  // range, so the moment chain stays in long double until the final result.
  long double mean_extended() const;
  long double second_moment_extended() const;

 private:
  InterArrivalModel() = default;
  Kind kind_ = Kind::kGeometric;
  double p_ = 1.0;
  std::int64_t gap_ = 1;
  std::vector<std::pair<std::int64_t, double>> pmf_;   // ascending support
  std::vector<double> tail_;                           // tail_[i] = P(Y >= pmf_[i].first)
};

// P(Z = z) = P(Y >= z) / E[Y], z >= 1.
double renewal_age_pmf(const InterArrivalModel& model, std::int64_t z);

// E[Z] = E[Y^2] / (2 E[Y]) + 1/2.
double renewal_mean_age(const InterArrivalModel& model);

struct AgeComponents {
  double input_age = 0.0;     // E[Z]: renewal age of source updates at the server
  double sampling_age = 0.0;  // E[Z']: renewal age of server dump attempts
};

struct AgeFormulaResult {
  double age_slots = 0.0;
  std::optional<AgeComponents> components;
};

// Mean monitor age of the FCFS queueing server:
//   1/(alpha lambda) + (1 - alpha lambda)/(mu - alpha lambda)
//     - alpha lambda / mu^2 + alpha lambda / mu.
// Requires 0 < alpha*lambda < mu <= 1; alpha*lambda >= mu is Unstable. The
// single exception is alpha*lambda == mu == 1: the divergent term has
// removable limit 1 there (the system is deterministic and stable), so the
// continuity value 2 is returned, keeping the three policies' formulas equal
// at unit rates for every lambda.
AgeFormulaResult aoi_mbt(double lambda, double alpha, double mu);

// 1/lambda + (tau+1)/2, with both renewal components reported.
AgeFormulaResult aoi_dad(double lambda, std::int64_t tau);

// 1/lambda + 1/mu, with both renewal components reported.
AgeFormulaResult aoi_rad(double lambda, double mu);

struct SystemTimeSample {
  std::int64_t interarrival = 0;  // Y_k: gap between consecutive admitted generations
  std::int64_t system_time = 0;   // T_k: send slot minus generation slot
};

// Plug-in age estimator for a FCFS queue from per-delivery samples:
//   (E[Y^2] + 2 E[Y T]) / (2 E[Y]) + 1/2
// with sample moments. All samples must have Y >= 1 and T >= 1.
double aoi_from_system_times(const std::vector<SystemTimeSample>& samples);

}  // namespace ageleak

#endif  // AGELEAK_AGE_H_
