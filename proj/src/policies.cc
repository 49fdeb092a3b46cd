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

#include "ageleak/policies.h"

#include "ageleak/error.h"

namespace ageleak {

StepOutcome mbt_step(MbtState& state, bool arrival,
                     std::int64_t arrival_timestamp, double admit_coin,
                     double serve_coin, double alpha, double mu) {
  if (arrival && admit_coin < alpha) {
    state.queue.push_back(arrival_timestamp);
  }
  StepOutcome out;
  if (!state.queue.empty() && serve_coin < mu) {
    out.sent = true;
    out.delivered_timestamp = state.queue.front();
    state.queue.pop_front();
  }
  return out;
}

StepOutcome dad_step(DadState& state, bool arrival,
                     std::int64_t arrival_timestamp, std::int64_t tau) {
  if (arrival) {
    state.stored = arrival_timestamp;  // fresher than anything held
  }
  StepOutcome out;
  if (state.slot_in_cycle == tau) {
    if (state.stored.has_value()) {
      out.sent = true;
      out.delivered_timestamp = state.stored;
      state.stored.reset();
    }
    state.slot_in_cycle = 1;
  } else {
    ++state.slot_in_cycle;
  }
  return out;
}

StepOutcome rad_step(RadState& state, bool arrival,
                     std::int64_t arrival_timestamp, double serve_coin,
                     double mu) {
  if (arrival) {
    state.stored = arrival_timestamp;
  }
  StepOutcome out;
  if (state.stored.has_value() && serve_coin < mu) {
    out.sent = true;
    out.delivered_timestamp = state.stored;
    state.stored.reset();
  }
  return out;
}

RunResult run_policy(const PolicySpec& spec, const BitSeq& x,
                     RngStream& admissions, RngStream& services) {
  validate_policy(spec);
  const int n = x.size();
  std::vector<std::uint8_t> y(static_cast<std::size_t>(n), 0);
  RunResult result;

  MbtState mbt;
  DadState dad;
  RadState rad;
  for (int i = 0; i < n; ++i) {
    // Slot t = i+1; its arrival was generated in slot t-1 = i.
    const std::int64_t slot = i + 1;
    const bool arrival = x[i] != 0;
    const std::int64_t timestamp = slot - 1;
    StepOutcome out;
    switch (spec.kind) {
      case PolicyKind::kMbt: {
        const double admit = arrival ? admissions.next_uniform() : 0.0;
        const double serve = services.next_uniform();
        out = mbt_step(mbt, arrival, timestamp, admit, serve, *spec.alpha,
                       *spec.mu);
        break;
      }
      case PolicyKind::kDad:
        out = dad_step(dad, arrival, timestamp, *spec.tau);
        break;
      case PolicyKind::kRad: {
        const double serve = services.next_uniform();
        out = rad_step(rad, arrival, timestamp, serve, *spec.mu);
        break;
      }
    }
    if (out.sent) {
      y[static_cast<std::size_t>(i)] = 1;
      result.deliveries.push_back(Delivery{slot, *out.delivered_timestamp});
    }
  }
  result.y = BitSeq(std::move(y));
  return result;
}

}  // namespace ageleak
