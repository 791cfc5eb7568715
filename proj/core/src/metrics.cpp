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

#include "kfdup/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "kfdup/errors.hpp"

namespace kfdup {

double packet_loss_percent(int64_t distinct_sent, int64_t distinct_delivered) {
  if (distinct_sent <= 0) {
    throw Error(ErrorCode::kEmptySent, "no sent packets to compute loss against");
  }
  double fraction =
      1.0 - static_cast<double>(distinct_delivered) / static_cast<double>(distinct_sent);
  return 100.0 * fraction;
}

JitterEstimate interarrival_jitter(std::span<const TransitSample> delivered) {
  if (delivered.size() < 2) {
    throw Error(ErrorCode::kTooFewPackets, "jitter needs at least two deliveries");
  }
  double smoothed = 0.0;
  double sum_abs = 0.0;
  for (size_t i = 1; i < delivered.size(); ++i) {
    TimeMicros transit_prev = delivered[i - 1].arrival_us - delivered[i - 1].send_us;
    TimeMicros transit = delivered[i].arrival_us - delivered[i].send_us;
    double d = to_seconds(std::llabs(transit - transit_prev));
    smoothed += (d - smoothed) / 16.0;
    sum_abs += d;
  }
  return {smoothed, sum_abs / static_cast<double>(delivered.size() - 1)};
}

std::optional<double> jitter_at_error(std::span<const TransitSample> delivered,
                                      std::span<const TimeMicros> loss_event_times_us,
                                      TimeMicros window_us) {
  if (loss_event_times_us.empty()) return std::nullopt;
  std::vector<TimeMicros> events(loss_event_times_us.begin(), loss_event_times_us.end());
  std::sort(events.begin(), events.end());

  // Loss events carry the lost packet's send time, so proximity is measured
  // on the send clock.
  std::vector<TransitSample> near;
  near.reserve(delivered.size());
  for (const TransitSample& s : delivered) {
    auto it = std::lower_bound(events.begin(), events.end(), s.send_us);
    bool close = (it != events.end() && *it - s.send_us <= window_us) ||
                 (it != events.begin() && s.send_us - *(it - 1) <= window_us);
    if (close) near.push_back(s);
  }
  if (near.size() < 2) return std::nullopt;
  return interarrival_jitter(near).smoothed_s;
}

int64_t key_loss_count(std::span<const FrameKind> kinds_by_id,
                       const std::set<int64_t>& delivered_ids) {
  int64_t lost = 0;
  for (size_t id = 0; id < kinds_by_id.size(); ++id) {
    if (kinds_by_id[id] == FrameKind::kKey &&
        !delivered_ids.contains(static_cast<int64_t>(id))) {
      ++lost;
    }
  }
  return lost;
}

int64_t key_loss_count(std::span<const LabeledPacket> sent_labeled,
                       const std::set<uint16_t>& delivered_seqs) {
  int64_t lost = 0;
  for (const LabeledPacket& lp : sent_labeled) {
    if (lp.kind == FrameKind::kKey && !delivered_seqs.contains(lp.packet.sequence_number)) {
      ++lost;
    }
  }
  return lost;
}

}  // namespace kfdup
