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

#include "ageleak/age.h"

#include <cmath>

#include "ageleak/error.h"

namespace ageleak {

InterArrivalModel InterArrivalModel::geometric(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw_error(ErrorCode::kOutOfRange, "p", "must be in (0, 1]");
  }
  InterArrivalModel m;
  m.kind_ = Kind::kGeometric;
  m.p_ = p;
  return m;
}

InterArrivalModel InterArrivalModel::deterministic(std::int64_t gap) {
  if (gap < 1) {
    throw_error(ErrorCode::kOutOfRange, "gap", "must be >= 1");
  }
  InterArrivalModel m;
  m.kind_ = Kind::kDeterministic;
  m.gap_ = gap;
  return m;
}

InterArrivalModel InterArrivalModel::empirical(
    const std::map<std::int64_t, double>& pmf) {
  if (pmf.empty()) {
    throw_error(ErrorCode::kEmptyInput, "pmf", "needs at least one entry");
  }
  InterArrivalModel m;
  m.kind_ = Kind::kEmpirical;
  double total = 0.0;
  for (const auto& [value, prob] : pmf) {
    if (value < 1) {
      throw_error(ErrorCode::kOutOfRange, "pmf",
                  "support must be positive integers");
    }
    if (!(prob >= 0.0 && prob <= 1.0)) {
      throw_error(ErrorCode::kOutOfRange, "pmf",
                  "probabilities must be in [0, 1]");
    }
    if (prob > 0.0) {
      m.pmf_.emplace_back(value, prob);
    }
    total += prob;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw_error(ErrorCode::kOutOfRange, "pmf", "must sum to 1 within 1e-9");
  }
  if (m.pmf_.empty()) {
    throw_error(ErrorCode::kEmptyInput, "pmf", "needs positive mass");
  }
  // Suffix sums give P(Y >= z) without cancellation.
  m.tail_.resize(m.pmf_.size());
  double suffix = 0.0;
  for (std::size_t i = m.pmf_.size(); i-- > 0;) {
    suffix += m.pmf_[i].second;
    m.tail_[i] = suffix;
  }
  return m;
}

long double InterArrivalModel::mean_extended() const {
  switch (kind_) {
    case Kind::kGeometric:
      return 1.0L / static_cast<long double>(p_);
    case Kind::kDeterministic:
      return static_cast<long double>(gap_);
    case Kind::kEmpirical: {
      long double sum = 0.0L;
      for (const auto& [value, prob] : pmf_) {
        sum += static_cast<long double>(value) * prob;
      }
      return sum;
    }
  }
  return 0.0L;
}

long double InterArrivalModel::second_moment_extended() const {
  switch (kind_) {
    case Kind::kGeometric: {
      const long double p = static_cast<long double>(p_);
      return (2.0L - p) / (p * p);
    }
    case Kind::kDeterministic: {
      const long double g = static_cast<long double>(gap_);
      return g * g;
    }
    case Kind::kEmpirical: {
      long double sum = 0.0L;
      for (const auto& [value, prob] : pmf_) {
        const long double v = static_cast<long double>(value);
        sum += v * v * prob;
      }
      return sum;
    }
  }
  return 0.0L;
}

double InterArrivalModel::mean() const {
  return static_cast<double>(mean_extended());
}

double InterArrivalModel::second_moment() const {
  return static_cast<double>(second_moment_extended());
}

double InterArrivalModel::tail(std::int64_t z) const {
  if (z < 1) {
    throw_error(ErrorCode::kOutOfRange, "z", "must be >= 1");
  }
  switch (kind_) {
    case Kind::kGeometric:
      return std::pow(1.0 - p_, static_cast<double>(z - 1));
    case Kind::kDeterministic:
      return z <= gap_ ? 1.0 : 0.0;
    case Kind::kEmpirical: {
      // First support point >= z.
      std::size_t lo = 0;
      std::size_t hi = pmf_.size();
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (pmf_[mid].first < z) {
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
      return lo < pmf_.size() ? tail_[lo] : 0.0;
    }
  }
  return 0.0;
}

double renewal_age_pmf(const InterArrivalModel& model, std::int64_t z) {
  if (z < 1) {
    throw_error(ErrorCode::kOutOfRange, "z", "must be >= 1");
  }
  return model.tail(z) / model.mean();
}

double renewal_mean_age(const InterArrivalModel& model) {
  const long double mean = model.mean_extended();
  const long double second = model.second_moment_extended();
  return static_cast<double>(second / (2.0L * mean) + 0.5L);
}

namespace {

void require_rate(const char* field, double value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw_error(ErrorCode::kOutOfRange, field, "must be in (0, 1]");
  }
}

}  // namespace

AgeFormulaResult aoi_mbt(double lambda, double alpha, double mu) {
  require_rate("lambda", lambda);
  require_rate("alpha", alpha);
  require_rate("mu", mu);
  const double r = alpha * lambda;  // effective admitted rate
  AgeFormulaResult result;
  if (r >= mu) {
    if (r == 1.0 && mu == 1.0) {
      // (1-r)/(mu-r) -> 1 as r,mu -> 1 jointly; every slot admits and
      // serves one update, so the age is the deterministic two-hop delay.
      result.age_slots = 2.0;
      return result;
    }
    throw_error(ErrorCode::kUnstable, "mu",
                "queue requires alpha*lambda < mu");
  }
  result.age_slots =
      1.0 / r + (1.0 - r) / (mu - r) - r / (mu * mu) + r / mu;
  return result;
}

AgeFormulaResult aoi_dad(double lambda, std::int64_t tau) {
  require_rate("lambda", lambda);
  if (tau < 1) {
    throw_error(ErrorCode::kOutOfRange, "tau", "must be >= 1");
  }
  AgeFormulaResult result;
  AgeComponents parts;
  parts.input_age = 1.0 / lambda;
  parts.sampling_age = 0.5 * static_cast<double>(tau + 1);
  result.age_slots = parts.input_age + parts.sampling_age;
  result.components = parts;
  return result;
}

AgeFormulaResult aoi_rad(double lambda, double mu) {
  require_rate("lambda", lambda);
  require_rate("mu", mu);
  AgeFormulaResult result;
  AgeComponents parts;
  parts.input_age = 1.0 / lambda;
  parts.sampling_age = 1.0 / mu;
  result.age_slots = parts.input_age + parts.sampling_age;
  result.components = parts;
  return result;
}

double aoi_from_system_times(const std::vector<SystemTimeSample>& samples) {
  if (samples.empty()) {
    throw_error(ErrorCode::kEmptyInput, "samples", "needs at least one pair");
  }
  long double sum_y = 0.0L;
  long double sum_y2 = 0.0L;
  long double sum_yt = 0.0L;
  for (const SystemTimeSample& s : samples) {
    if (s.interarrival < 1 || s.system_time < 1) {
      throw_error(ErrorCode::kOutOfRange, "samples",
                  "gaps and system times are >= 1 by the slot convention");
    }
    const long double y = static_cast<long double>(s.interarrival);
    const long double t = static_cast<long double>(s.system_time);
    sum_y += y;
    sum_y2 += y * y;
    sum_yt += y * t;
  }
  return static_cast<double>((sum_y2 + 2.0L * sum_yt) / (2.0L * sum_y) +
                             0.5L);
}

}  // namespace ageleak
