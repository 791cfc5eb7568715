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

#include "kfdup/dup.hpp"

#include <deque>

#include "kfdup/errors.hpp"

namespace kfdup {

namespace {

bool should_duplicate(const LabeledPacket& p, const DupOptions& o) {
  switch (o.policy) {
    case DupPolicy::kNone:
      return false;
    case DupPolicy::kAll:
      return true;
    case DupPolicy::kKeyFrames:
      if (p.kind != FrameKind::kKey) return false;
      return o.scope == DupScope::kWholeFrame || p.frame_start;
  }
  return false;
}

}  // namespace

std::vector<RtpPacket> duplicate_stream(std::span<const LabeledPacket> labeled,
                                        const DupOptions& options) {
  std::vector<RtpPacket> out;
  out.reserve(labeled.size() * (options.policy == DupPolicy::kNone ? 1 : 2));

  // Copies scheduled to appear after `remaining` further originals.
  struct Pending {
    RtpPacket copy;
    int remaining;
  };
  std::deque<Pending> pending;

  for (const LabeledPacket& lp : labeled) {
    out.push_back(lp.packet);
    if (should_duplicate(lp, options)) {
      pending.push_back({lp.packet, options.gap});
    }
    for (auto& entry : pending) --entry.remaining;
    while (!pending.empty() && pending.front().remaining < 0) {
      out.push_back(std::move(pending.front().copy));
      pending.pop_front();
    }
  }
  // Stream ended before the gap elapsed; flush in order.
  for (auto& entry : pending) out.push_back(std::move(entry.copy));
  return out;
}

double overhead_ratio(std::span<const RtpPacket> original, std::span<const RtpPacket> duplicated) {
  if (original.empty() || duplicated.empty()) {
    throw Error(ErrorCode::kEmptyStream, "overhead_ratio needs nonempty streams");
  }
  uint64_t base = 0;
  uint64_t with_copies = 0;
  for (const RtpPacket& p : original) base += p.serialized_size();
  for (const RtpPacket& p : duplicated) with_copies += p.serialized_size();
  return (static_cast<double>(with_copies) - static_cast<double>(base)) /
         static_cast<double>(base);
}

}  // namespace kfdup
