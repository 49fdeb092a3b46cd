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

#include "ageleak/policy.h"

#include "ageleak/error.h"

namespace ageleak {

namespace {

// NaN must fail every bound, so bounds are written as negated passes.
void require_probability(const char* field, double value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw_error(ErrorCode::kOutOfRange, field, "must be in (0, 1]");
  }
}

void require_absent(PolicyKind kind, const char* field, bool present) {
  if (present) {
    throw_error(ErrorCode::kExtraneousField, field,
                std::string("not applicable to ") + to_string(kind));
  }
}

void require_present(PolicyKind kind, const char* field, bool present) {
  if (!present) {
    throw_error(ErrorCode::kMissingField, field,
                std::string("required for ") + to_string(kind));
  }
}

}  // namespace

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kMbt:
      return "mbt";
    case PolicyKind::kDad:
      return "dad";
    case PolicyKind::kRad:
      return "rad";
  }
  return "unknown";
}

std::optional<PolicyKind> policy_kind_from_name(const std::string& name) {
  if (name == "mbt") return PolicyKind::kMbt;
  if (name == "dad") return PolicyKind::kDad;
  if (name == "rad") return PolicyKind::kRad;
  return std::nullopt;
}

PolicySpec PolicySpec::mbt(double lambda, double alpha, double mu) {
  PolicySpec spec;
  spec.kind = PolicyKind::kMbt;
  spec.lambda = lambda;
  spec.alpha = alpha;
  spec.mu = mu;
  return spec;
}

PolicySpec PolicySpec::dad(double lambda, std::int64_t tau) {
  PolicySpec spec;
  spec.kind = PolicyKind::kDad;
  spec.lambda = lambda;
  spec.tau = tau;
  return spec;
}

PolicySpec PolicySpec::rad(double lambda, double mu) {
  PolicySpec spec;
  spec.kind = PolicyKind::kRad;
  spec.lambda = lambda;
  spec.mu = mu;
  return spec;
}

PolicySpec validate_policy(const PolicySpec& spec) {
  require_probability("lambda", spec.lambda);
  switch (spec.kind) {
    case PolicyKind::kMbt:
      require_present(spec.kind, "alpha", spec.alpha.has_value());
      require_present(spec.kind, "mu", spec.mu.has_value());
      require_absent(spec.kind, "tau", spec.tau.has_value());
      require_probability("alpha", *spec.alpha);
      require_probability("mu", *spec.mu);
      break;
    case PolicyKind::kDad:
      require_present(spec.kind, "tau", spec.tau.has_value());
      require_absent(spec.kind, "alpha", spec.alpha.has_value());
      require_absent(spec.kind, "mu", spec.mu.has_value());
      if (*spec.tau < 1) {
        throw_error(ErrorCode::kOutOfRange, "tau", "must be >= 1");
      }
      break;
    case PolicyKind::kRad:
      require_present(spec.kind, "mu", spec.mu.has_value());
      require_absent(spec.kind, "alpha", spec.alpha.has_value());
      require_absent(spec.kind, "tau", spec.tau.has_value());
      require_probability("mu", *spec.mu);
      break;
  }
  return spec;
}

}  // namespace ageleak
