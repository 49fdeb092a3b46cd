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

#ifndef AGELEAK_POLICY_H_
#define AGELEAK_POLICY_H_

#include <cstdint>
#include <optional>
#include <string>

namespace ageleak {

// The three server policies covered by the toolkit.
//
// kMbt: memoryless buffered transmission. FCFS queue; an arriving update is
//       admitted with probability alpha; whenever the queue is nonempty the
//       head is transmitted with probability mu.
// kDad: drop and dump. The buffer keeps only the freshest pending update and
//       its content is dumped to the channel every tau-th slot.
// kRad: random and dump. The buffer keeps only the freshest pending update
//       and a dump is attempted independently each slot with probability mu.
enum class PolicyKind { kMbt, kDad, kRad };

const char* to_string(PolicyKind kind);
std::optional<PolicyKind> policy_kind_from_name(const std::string& name);

// One policy configuration plus the Bernoulli(lambda) source rate. Fields
// that do not apply to `kind` stay disengaged; validate_policy enforces the
// pairing and the bounds.
struct PolicySpec {
  PolicyKind kind = PolicyKind::kMbt;
  double lambda = 0.0;                // per-slot generation probability
  std::optional<double> alpha;        // MBT admission probability
  std::optional<double> mu;           // MBT / RAD transmission probability
  std::optional<std::int64_t> tau;    // DAD inter-dump period, slots

  static PolicySpec mbt(double lambda, double alpha, double mu);
  static PolicySpec dad(double lambda, std::int64_t tau);
  static PolicySpec rad(double lambda, double mu);
};

// Returns `spec` unchanged when it is well formed. Throws Error with
// kOutOfRange (bad bound; field() names the offender), kMissingField
// (required for kind but absent), or kExtraneousField (set but not
// applicable to kind). Bounds: lambda in (0,1], alpha in (0,1],
// mu in (0,1], tau >= 1. NaN never passes a bound.
PolicySpec validate_policy(const PolicySpec& spec);

}  // namespace ageleak

#endif  // AGELEAK_POLICY_H_
