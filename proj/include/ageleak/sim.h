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

#ifndef AGELEAK_SIM_H_
#define AGELEAK_SIM_H_

#include <cstdint>
#include <map>
#include <vector>

#include "ageleak/age.h"
#include "ageleak/policy.h"

namespace ageleak {

// Monte Carlo simulation of the source -> server -> monitor pipeline over
// slots 0..T-1. Per slot, in order: deliveries sent in the previous slot
// reach the monitor, the update generated in the previous slot reaches the
// server, the slot's ages are recorded, the policy runs its step, and the
// source draws the current slot's generation coin. Randomness comes from
// the three named streams of `seed`, so every estimate below is a pure
// function of its config.

struct SimConfig {
  PolicySpec policy;
  std::int64_t horizon = 1'000'000;  // T, slots
  std::int64_t warmup = 10'000;      // slots discarded before measuring
  std::uint64_t seed = 0;
};

struct AgeEstimate {
  double mean_age = 0.0;
  double std_error = 0.0;
  std::map<std::int64_t, std::int64_t> histogram;  // age -> slot count
  std::int64_t slots_counted = 0;
  // 20 equal-span batch means behind std_error; empty when the measuring
  // window is too short to cut 20 batches. Ages within one run are strongly
  // autocorrelated, so iid formulas would understate the error.
  std::vector<double> batch_means;
};

// Mean monitor age over post-warmup slots. Slots before the first delivery
// carry no age and are excluded. MBT configs with alpha*lambda >= mu are
// refused as Unstable up front (the time average diverges; the only
// exception is the deterministic alpha*lambda == mu == 1 point), and a queue
// passing 10^6 pending updates aborts with the same diagnostic.
AgeEstimate simulate_aoi(const SimConfig& config);

enum class ObservationPoint {
  kServerInput,      // Z: slots since the last source update reached the server
  kMonitorSampling,  // Z': slots since the last server dump attempt
};

// Per-slot histogram of the chosen renewal age over post-warmup slots.
// kMonitorSampling is defined only for DAD and RAD: a dump attempt is every
// tau-th slot (DAD) or an every-slot Bernoulli(mu) coin (RAD), regardless of
// buffer content; MBT has no sampling renewal process.
std::map<std::int64_t, std::int64_t> empirical_renewal_age(
    const SimConfig& config, ObservationPoint point);

// Histogram of gaps between consecutive renewal events at the same
// observation point (source arrivals or dump attempts); feeds the empirical
// InterArrivalModel.
std::map<std::int64_t, std::int64_t> empirical_intersample_gaps(
    const SimConfig& config, ObservationPoint point);

struct DecompositionReport {
  double monitor_age = 0.0;          // mean A_m
  double input_age = 0.0;            // mean Z
  double sampling_age = 0.0;         // mean Z'
  double residual = 0.0;             // mean of A_m - Z - Z' per slot
  double residual_std_error = 0.0;   // batch-means error of the residual
  std::int64_t slots_counted = 0;
  bool within_three_sigma = false;
};

// Measures E[A_m], E[Z], E[Z'] in one run (DAD or RAD only) and reports the
// per-slot residual A_m - Z - Z'. Dump attempts fire independent of buffer
// content, which is what makes Z' a renewal age independent of Z; with the
// idle-attempt re-send convention the identity A_m(t) = Z'_t + Z_(t - Z'_t)
// holds pathwise, so the residual mean is a pure sampling artifact.
DecompositionReport decomposition_check(const SimConfig& config);

// (Y_k, T_k) per delivery of an MBT run: Y_k gaps between consecutive
// delivered generations, T_k send slot minus generation slot. First delivery
// is skipped (no gap yet). Feeds aoi_from_system_times.
std::vector<SystemTimeSample> collect_system_time_samples(
    const SimConfig& config);

enum class IdleDumpConvention {
  kSkip,            // real wire behavior: an empty-buffer dump sends nothing
  kResendPrevious,  // analysis device: an empty-buffer dump re-sends the last update
};

// Per-slot monitor age, -1 before the first delivery. Test instrument for
// the age-path shape and for checking that the two idle-dump conventions
// give identical age paths under shared coins.
std::vector<std::int64_t> monitor_age_trace(const SimConfig& config,
                                            IdleDumpConvention convention);

}  // namespace ageleak

#endif  // AGELEAK_SIM_H_
