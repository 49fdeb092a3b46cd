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

#ifndef AGELEAK_POLICIES_H_
#define AGELEAK_POLICIES_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "ageleak/bitseq.h"
#include "ageleak/policy.h"
#include "ageleak/rng.h"

namespace ageleak {

// Within one slot the order is fixed: the slot's arrival (if any) enters the
// buffer first, then the transmission decision runs. A transmission sent in
// slot t is received by the monitor at the start of slot t+1, so an update
// can be relayed in its own arrival slot.

// Outcome of one slot at the server. delivered_timestamp is the generation
// slot of the transmitted update; engaged iff sent.
struct StepOutcome {
  bool sent = false;
  std::optional<std::int64_t> delivered_timestamp;
};

// FCFS queue of generation timestamps, head = oldest admitted update.
struct MbtState {
  std::deque<std::int64_t> queue;
};

// Freshest update accepted since the last dump, plus the position of the
// current slot in the dump cycle (1..tau; a dump fires when it reaches tau).
struct DadState {
  std::optional<std::int64_t> stored;
  std::int64_t slot_in_cycle = 1;
};

// Freshest update accepted since the last transmission.
struct RadState {
  std::optional<std::int64_t> stored;
};

// One slot of each policy. `arrival` says whether an update (with generation
// slot `arrival_timestamp`) reaches the server this slot. Coins are uniforms
// on [0,1): a branch with probability p is taken when coin < p. admit_coin
// is consulted only when arrival is true; serve_coin every slot.
StepOutcome mbt_step(MbtState& state, bool arrival,
                     std::int64_t arrival_timestamp, double admit_coin,
                     double serve_coin, double alpha, double mu);
// Deterministic: consumes no coins. Dump slots are those with
// slot_in_cycle == tau on entry; the cycle counter then wraps to 1.
StepOutcome dad_step(DadState& state, bool arrival,
                     std::int64_t arrival_timestamp, std::int64_t tau);
StepOutcome rad_step(RadState& state, bool arrival,
                     std::int64_t arrival_timestamp, double serve_coin,
                     double mu);

struct Delivery {
  std::int64_t slot;       // 1-based slot of the transmission
  std::int64_t timestamp;  // generation slot of the transmitted update
};

struct RunResult {
  BitSeq y;                          // y[t] = 1 iff a send happened in slot t+1
  std::vector<Delivery> deliveries;  // in slot order
};

// Drives one policy over slots 1..n against the source sequence x: an
// arrival x[t]=1 (slot t+1) was generated in slot t and enters the server at
// the start of slot t+1. Admission coins are drawn from `admissions` only on
// arrival slots; service coins from `services` every slot (MBT, RAD). DAD
// consumes no randomness: its output is a pure function of x.
RunResult run_policy(const PolicySpec& spec, const BitSeq& x,
                     RngStream& admissions, RngStream& services);

}  // namespace ageleak

#endif  // AGELEAK_POLICIES_H_
