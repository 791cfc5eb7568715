// Copyright 2026 The kfdup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KFDUP_METRICS_HPP_
#define KFDUP_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "kfdup/keyframe.hpp"
#include "kfdup/types.hpp"

namespace kfdup {

// Model inputs computed from sent/received traces, plus receiver counters.
struct StreamStats {
  int64_t sent_packets = 0;         // distinct originals
  int64_t transmitted_packets = 0;  // originals + copies put on the wire
  int64_t delivered_packets = 0;    // distinct originals with >= 1 surviving copy
  int64_t duplicate_drops = 0;
  int64_t stale_drops = 0;
  double loss_percent = 0.0;        // p, 0..100
  double jitter_s = 0.0;            // headline j: smoothed interarrival estimator
  double jitter_mean_abs_s = 0.0;   // cross-check: mean |transit delta|
  std::optional<double> jitter_at_error_s;
  bool key_frame_loss = false;
  int64_t key_packets_lost = 0;
  double overhead = 0.0;
};

// 100 * (1 - delivered/sent) over distinct original packets. A packet counts
// as delivered if any copy arrived. Throws Error{EmptySent}.
double packet_loss_percent(int64_t distinct_sent, int64_t distinct_delivered);

struct TransitSample {
  TimeMicros send_us = 0;
  TimeMicros arrival_us = 0;
};

struct JitterEstimate {
  double smoothed_s = 0.0;  // J += (|d| - J)/16 over transit deltas
  double mean_abs_s = 0.0;  // plain mean of |d|
};

// Interarrival jitter over consecutive deliveries, in seconds.
// Throws Error{TooFewPackets} below two samples.
JitterEstimate interarrival_jitter(std::span<const TransitSample> delivered);

constexpr TimeMicros kDefaultErrorWindowUs = 1'000'000;

// Same estimator restricted to deliveries within +-window of a loss event.
// Absent when there are no loss events or fewer than two deliveries qualify.
std::optional<double> jitter_at_error(std::span<const TransitSample> delivered,
                                      std::span<const TimeMicros> loss_event_times_us,
                                      TimeMicros window_us = kDefaultErrorWindowUs);

// KEY-labeled originals with no delivered copy. Ids are unwrapped packet ids;
// kinds_by_id[i] labels id i.
int64_t key_loss_count(std::span<const FrameKind> kinds_by_id,
                       const std::set<int64_t>& delivered_ids);

// Convenience overload on (labeled packets, delivered seqs).
int64_t key_loss_count(std::span<const LabeledPacket> sent_labeled,
                       const std::set<uint16_t>& delivered_seqs);

}  // namespace kfdup

#endif  // KFDUP_METRICS_HPP_
