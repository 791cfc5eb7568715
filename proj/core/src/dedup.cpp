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

#include "kfdup/dedup.hpp"

namespace kfdup {

DedupDecision Deduplicator::accept(uint16_t seq) {
  if (!primed_) {
    primed_ = true;
    newest_ = seq;
    seen_.insert(seq);
    ++kept_;
    return DedupDecision::kKeep;
  }
  if (seen_.contains(seq)) {
    ++duplicate_drops_;
    return DedupDecision::kDropDuplicate;
  }
  int behind = seq_forward_distance(seq, newest_);
  if (behind > window_) {
    // Too far back to have been tracked; counted apart from duplicates so
    // experiments can verify it never fires at desk scale.
    ++stale_drops_;
    return DedupDecision::kDropStale;
  }
  seen_.insert(seq);
  if (behind < 0) advance_newest(seq);
  ++kept_;
  return DedupDecision::kKeep;
}

void Deduplicator::advance_newest(uint16_t to) {
  int steps = seq_forward_distance(newest_, to);
  if (steps >= window_) {
    // Whole window slid past; nothing old can survive.
    std::unordered_set<uint16_t> fresh;
    for (uint16_t s : seen_) {
      if (seq_forward_distance(s, to) <= window_) fresh.insert(s);
    }
    seen_.swap(fresh);
  } else {
    // Only the numbers that just fell out of the window need erasing.
    for (int k = 1; k <= steps; ++k) {
      seen_.erase(static_cast<uint16_t>(newest_ + k - window_ - 1));
    }
  }
  newest_ = to;
}

void Deduplicator::reset() {
  primed_ = false;
  newest_ = 0;
  seen_.clear();
}

}  // namespace kfdup
