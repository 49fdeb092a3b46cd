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

#include "ageleak/sim.h"

#include <cmath>
#include <cstdint>

#include "ageleak/error.h"
#include "ageleak/policies.h"
#include "ageleak/rng.h"

namespace ageleak {

namespace {

constexpr std::int64_t kQueueGuard = 1'000'000;
constexpr int kBatchCount = 20;

// What one slot looks like right after inbound events land and right before
// the policy acts. Ages are -1 while their defining event has not happened
// yet; each becomes defined at some slot and stays defined afterwards.
struct SlotView {
  std::int64_t slot = 0;
  std::int64_t monitor_age = -1;   // slots since generation of freshest delivered update
  std::int64_t input_age = -1;     // Z: slots since a source update last reached the server
  std::int64_t sampling_age = -1;  // Z': slots since the last dump attempt
  bool arrival = false;            // a source update reached the server this slot
  bool attempt = false;            // the server attempts a dump this slot (DAD/RAD)
};

void validate_config(const SimConfig& config, bool statistics) {
  validate_policy(config.policy);
  if (statistics && config.horizon < 1000) {
    throw_error(ErrorCode::kOutOfRange, "horizon",
                "statistics need at least 1000 slots");
  }
  if (config.horizon < 1) {
    throw_error(ErrorCode::kOutOfRange, "horizon", "must be >= 1");
  }
  if (config.warmup < 0 || config.warmup >= config.horizon) {
    throw_error(ErrorCode::kOutOfRange, "warmup",
                "must be in [0, horizon)");
  }
  if (config.policy.kind == PolicyKind::kMbt) {
    const double rate = *config.policy.alpha * config.policy.lambda;
    const double mu = *config.policy.mu;
    // The deterministic rate-1/service-1 point is the one stable boundary.
    if (rate >= mu && !(rate == 1.0 && mu == 1.0)) {
      throw_error(ErrorCode::kUnstable, "mu",
                  "mean age diverges: alpha*lambda >= mu");
    }
  }
}

// Drives the pipeline over slots 0..T-1 and reports each slot to on_slot
// (after deliveries and arrivals land, before the policy acts, so the ages
// seen are start-of-slot values) and each transmission to on_delivery(slot,
// generation timestamp). Real transmissions reach the monitor at the start
// of the next slot; with kResendPrevious an idle dump attempt re-delivers
// the freshest already-delivered update, which never changes the monitor age
// path but keeps dump slots renewal-regular.
template <typename OnSlot, typename OnDelivery>
void run_pipeline(const SimConfig& config, IdleDumpConvention convention,
                  OnSlot&& on_slot, OnDelivery&& on_delivery) {
  const PolicySpec& policy = config.policy;
  RngStream arrivals(config.seed, Stream::kArrivals);
  RngStream admissions(config.seed, Stream::kAdmissions);
  RngStream services(config.seed, Stream::kServices);

  MbtState mbt;
  DadState dad;
  RadState rad;

  bool generated_last_slot = false;  // source coin of the previous slot
  std::int64_t last_input_timestamp = -1;   // newest generation seen by server
  std::int64_t last_attempt_slot = -1;
  std::int64_t monitor_timestamp = -1;      // generation of freshest delivered update
  std::int64_t pending_delivery = -1;       // in flight server->monitor

  for (std::int64_t t = 0; t < config.horizon; ++t) {
    if (pending_delivery >= 0) {
      monitor_timestamp = pending_delivery;
      pending_delivery = -1;
    }
    SlotView view;
    view.slot = t;
    view.arrival = generated_last_slot;
    if (view.arrival) {
      last_input_timestamp = t - 1;  // generated one slot ago
    }
    view.monitor_age = monitor_timestamp >= 0 ? t - monitor_timestamp : -1;
    view.input_age =
        last_input_timestamp >= 0 ? t - last_input_timestamp : -1;
    view.sampling_age = last_attempt_slot >= 0 ? t - last_attempt_slot : -1;

    bool attempt = false;
    StepOutcome out;
    switch (policy.kind) {
      case PolicyKind::kMbt: {
        const double admit = view.arrival ? admissions.next_uniform() : 0.0;
        const double serve = services.next_uniform();
        out = mbt_step(mbt, view.arrival, t - 1, admit, serve, *policy.alpha,
                       *policy.mu);
        if (static_cast<std::int64_t>(mbt.queue.size()) > kQueueGuard) {
          throw_error(ErrorCode::kUnstable, "mu",
                      "queue exceeded 1e6 pending updates");
        }
        break;
      }
      case PolicyKind::kDad:
        attempt = dad.slot_in_cycle == *policy.tau;
        out = dad_step(dad, view.arrival, t - 1, *policy.tau);
        break;
      case PolicyKind::kRad: {
        const double serve = services.next_uniform();
        attempt = serve < *policy.mu;
        out = rad_step(rad, view.arrival, t - 1, serve, *policy.mu);
        break;
      }
    }
    view.attempt = attempt;
    on_slot(view);

    if (out.sent) {
      pending_delivery = *out.delivered_timestamp;
      on_delivery(t, *out.delivered_timestamp);
    } else if (convention == IdleDumpConvention::kResendPrevious && attempt &&
               last_input_timestamp >= 0) {
      // Empty buffer at an attempt means the newest update was already
      // delivered; re-sending it is a no-op for the age path.
      pending_delivery = last_input_timestamp;
    }
    if (attempt) {
      last_attempt_slot = t;
    }
    generated_last_slot = arrivals.next_uniform() < policy.lambda;
  }
}

// Streaming mean / batch-means accumulator over a value that is defined from
// some slot onward. Batches are 20 equal slot spans starting at the first
// accepted slot; trailing slots beyond the last full span still count toward
// the mean, just not toward a batch.
class BatchAccumulator {
 public:
  explicit BatchAccumulator(std::int64_t horizon) : horizon_(horizon) {}

  void add(std::int64_t slot, std::int64_t value) {
    if (count_ == 0) {
      first_slot_ = slot;
      span_ = (horizon_ - first_slot_) / kBatchCount;
    }
    sum_ += value;
    ++count_;
    if (span_ > 0) {
      const std::int64_t offset = slot - first_slot_;
      if (offset < span_ * kBatchCount) {
        batch_sums_[offset / span_] += static_cast<double>(value);
      }
    }
  }

  std::int64_t count() const { return count_; }

  double mean() const {
    return count_ > 0 ? static_cast<double>(sum_) / static_cast<double>(count_)
                      : 0.0;
  }

  std::vector<double> batch_means() const {
    if (span_ == 0 || count_ == 0) return {};
    std::vector<double> means(kBatchCount);
    for (int b = 0; b < kBatchCount; ++b) {
      means[static_cast<std::size_t>(b)] =
          batch_sums_[b] / static_cast<double>(span_);
    }
    return means;
  }

  double std_error() const {
    const std::vector<double> means = batch_means();
    if (means.empty()) return 0.0;
    double avg = 0.0;
    for (double m : means) avg += m;
    avg /= static_cast<double>(means.size());
    double ss = 0.0;
    for (double m : means) ss += (m - avg) * (m - avg);
    const double k = static_cast<double>(means.size());
    return std::sqrt(ss / (k - 1.0) / k);
  }

 private:
  std::int64_t horizon_;
  std::int64_t first_slot_ = 0;
  std::int64_t span_ = 0;
  std::int64_t sum_ = 0;
  std::int64_t count_ = 0;
  double batch_sums_[kBatchCount] = {0.0};
};

class HistogramAccumulator {
 public:
  void add(std::int64_t value) {
    const std::size_t index = static_cast<std::size_t>(value);
    if (index >= counts_.size()) {
      counts_.resize(index + 1, 0);
    }
    ++counts_[index];
  }

  std::map<std::int64_t, std::int64_t> as_map() const {
    std::map<std::int64_t, std::int64_t> out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] > 0) {
        out.emplace(static_cast<std::int64_t>(i), counts_[i]);
      }
    }
    return out;
  }

 private:
  std::vector<std::int64_t> counts_;
};

void require_sampling_policy(const PolicySpec& policy, const char* what) {
  if (policy.kind == PolicyKind::kMbt) {
    throw_error(ErrorCode::kUnsupportedPolicy, "policy",
                std::string(what) +
                    " needs a dump-attempt renewal process; MBT has none");
  }
}

}  // namespace

AgeEstimate simulate_aoi(const SimConfig& config) {
  validate_config(config, /*statistics=*/true);
  BatchAccumulator ages(config.horizon);
  HistogramAccumulator histogram;
  run_pipeline(
      config, IdleDumpConvention::kSkip,
      [&](const SlotView& view) {
        if (view.slot >= config.warmup && view.monitor_age >= 0) {
          ages.add(view.slot, view.monitor_age);
          histogram.add(view.monitor_age);
        }
      },
      [](std::int64_t, std::int64_t) {});
  AgeEstimate estimate;
  estimate.mean_age = ages.mean();
  estimate.std_error = ages.std_error();
  estimate.histogram = histogram.as_map();
  estimate.slots_counted = ages.count();
  estimate.batch_means = ages.batch_means();
  return estimate;
}

std::map<std::int64_t, std::int64_t> empirical_renewal_age(
    const SimConfig& config, ObservationPoint point) {
  validate_config(config, /*statistics=*/true);
  if (point == ObservationPoint::kMonitorSampling) {
    require_sampling_policy(config.policy, "sampling-age histogram");
  }
  HistogramAccumulator histogram;
  run_pipeline(
      config, IdleDumpConvention::kSkip,
      [&](const SlotView& view) {
        if (view.slot < config.warmup) return;
        const std::int64_t age = point == ObservationPoint::kServerInput
                                     ? view.input_age
                                     : view.sampling_age;
        if (age >= 0) histogram.add(age);
      },
      [](std::int64_t, std::int64_t) {});
  return histogram.as_map();
}

std::map<std::int64_t, std::int64_t> empirical_intersample_gaps(
    const SimConfig& config, ObservationPoint point) {
  validate_config(config, /*statistics=*/true);
  if (point == ObservationPoint::kMonitorSampling) {
    require_sampling_policy(config.policy, "inter-sample gap histogram");
  }
  HistogramAccumulator histogram;
  std::int64_t previous = -1;
  run_pipeline(
      config, IdleDumpConvention::kSkip,
      [&](const SlotView& view) {
        const bool event = point == ObservationPoint::kServerInput
                               ? view.arrival
                               : view.attempt;
        if (!event) return;
        if (previous >= 0 && view.slot >= config.warmup) {
          histogram.add(view.slot - previous);
        }
        previous = view.slot;
      },
      [](std::int64_t, std::int64_t) {});
  return histogram.as_map();
}

DecompositionReport decomposition_check(const SimConfig& config) {
  validate_config(config, /*statistics=*/true);
  require_sampling_policy(config.policy, "age decomposition");
  BatchAccumulator monitor(config.horizon);
  BatchAccumulator input(config.horizon);
  BatchAccumulator sampling(config.horizon);
  BatchAccumulator residual(config.horizon);
  run_pipeline(
      config, IdleDumpConvention::kSkip,
      [&](const SlotView& view) {
        // One common window: slots where all three ages exist.
        if (view.slot < config.warmup || view.monitor_age < 0 ||
            view.input_age < 0 || view.sampling_age < 0) {
          return;
        }
        monitor.add(view.slot, view.monitor_age);
        input.add(view.slot, view.input_age);
        sampling.add(view.slot, view.sampling_age);
        residual.add(view.slot,
                     view.monitor_age - view.input_age - view.sampling_age);
      },
      [](std::int64_t, std::int64_t) {});
  DecompositionReport report;
  report.monitor_age = monitor.mean();
  report.input_age = input.mean();
  report.sampling_age = sampling.mean();
  report.residual = residual.mean();
  report.residual_std_error = residual.std_error();
  report.slots_counted = residual.count();
  report.within_three_sigma =
      std::fabs(report.residual) <= 3.0 * report.residual_std_error;
  return report;
}

std::vector<SystemTimeSample> collect_system_time_samples(
    const SimConfig& config) {
  validate_config(config, /*statistics=*/true);
  if (config.policy.kind != PolicyKind::kMbt) {
    throw_error(ErrorCode::kUnsupportedPolicy, "policy",
                "system-time samples describe the FCFS queue (MBT)");
  }
  std::vector<SystemTimeSample> samples;
  std::int64_t previous_generation = -1;
  run_pipeline(
      config, IdleDumpConvention::kSkip, [](const SlotView&) {},
      [&](std::int64_t slot, std::int64_t timestamp) {
        if (previous_generation >= 0 && slot >= config.warmup) {
          samples.push_back(SystemTimeSample{timestamp - previous_generation,
                                             slot - timestamp});
        }
        previous_generation = timestamp;
      });
  return samples;
}

std::vector<std::int64_t> monitor_age_trace(const SimConfig& config,
                                            IdleDumpConvention convention) {
  validate_config(config, /*statistics=*/false);
  std::vector<std::int64_t> trace;
  trace.reserve(static_cast<std::size_t>(config.horizon));
  run_pipeline(
      config, convention,
      [&](const SlotView& view) { trace.push_back(view.monitor_age); },
      [](std::int64_t, std::int64_t) {});
  return trace;
}

}  // namespace ageleak
