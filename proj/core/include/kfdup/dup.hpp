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

#ifndef KFDUP_DUP_HPP_
#define KFDUP_DUP_HPP_

#include <span>
#include <vector>

#include "kfdup/keyframe.hpp"
#include "kfdup/rtp.hpp"
#include "kfdup/types.hpp"

namespace kfdup {

struct DupOptions {
  DupPolicy policy = DupPolicy::kNone;
  DupScope scope = DupScope::kWholeFrame;
  // Packets between an original and its copy. 0 = copy immediately adjacent,
  // which is worst case under burst loss.
  int gap = 0;
};

// Sender-side duplication. Copies are byte-identical and keep the original
// sequence number; the receiver's drop rule keys on coinciding numbers.
// Originals keep their relative order; UNKNOWN labels are treated as delta.
std::vector<RtpPacket> duplicate_stream(std::span<const LabeledPacket> labeled,
                                        const DupOptions& options);

// (bytes(duplicated) - bytes(original)) / bytes(original), over serialized
// RTP sizes. Throws Error{EmptyStream}.
double overhead_ratio(std::span<const RtpPacket> original, std::span<const RtpPacket> duplicated);

}  // namespace kfdup

#endif  // KFDUP_DUP_HPP_
