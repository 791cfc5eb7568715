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

#ifndef KFDUP_DEDUP_HPP_
#define KFDUP_DEDUP_HPP_

#include <cstdint>
#include <unordered_set>

#include "kfdup/rtp.hpp"

namespace kfdup {

enum class DedupDecision { kKeep, kDropDuplicate, kDropStale };

constexpr int kDefaultDedupWindow = 1024;

// Receiver-side duplicate suppression that tolerates reordering: a packet is
// dropped only if its sequence number was already accepted, never merely
// because it arrived late. Memory is bounded by the window regardless of
// stream length. One instance per ssrc, mutated single-threaded.
class Deduplicator {
 public:
  explicit Deduplicator(int window_size = kDefaultDedupWindow) : window_(window_size) {}

  DedupDecision accept(uint16_t seq);
  DedupDecision accept(const RtpPacket& p) { return accept(p.sequence_number); }

  // Clears all state; for stream boundaries. Counters are kept.
  void reset();

  int window_size() const { return window_; }
  uint64_t kept() const { return kept_; }
  uint64_t duplicate_drops() const { return duplicate_drops_; }
  uint64_t stale_drops() const { return stale_drops_; }

 private:
  void advance_newest(uint16_t to);

  int window_;
  bool primed_ = false;
  uint16_t newest_ = 0;
  std::unordered_set<uint16_t> seen_;
  uint64_t kept_ = 0;
  uint64_t duplicate_drops_ = 0;
  uint64_t stale_drops_ = 0;
};

}  // namespace kfdup

#endif  // KFDUP_DEDUP_HPP_
