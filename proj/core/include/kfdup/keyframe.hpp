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

#ifndef KFDUP_KEYFRAME_HPP_
#define KFDUP_KEYFRAME_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "kfdup/rtp.hpp"
#include "kfdup/types.hpp"

namespace kfdup {

struct ClassifierOptions {
  // WMV9-style encapsulation carries no in-band start code; the key-frame flag
  // is a single bit in the first payload byte of a frame-start packet.
  int wmv9_key_bit = 7;  // bit index, 7 == MSB
};

// Stateless scan of one payload for a frame-start pattern.
//   MPEG-2:      picture start code 00 00 01 00, picture_coding_type == 1 is a
//                key (I) picture; 2..4 (P/B/D) are delta.
//   MPEG-4/DivX: VOP start code 00 00 01 B6, top two bits of the next byte are
//                the vop_coding_type; 00 is a key (I) VOP.
//   WMV9:        answers as if the payload begins a frame: key iff the
//                configured indicator bit of byte 0 is set. Frame-start
//                context is the tracker's job.
// Returns UNKNOWN when no decodable pattern is present. Total; never throws.
FrameKind classify_payload(MediaCodec codec, std::span<const uint8_t> payload,
                           const ClassifierOptions& options = {});

struct LabeledPacket {
  RtpPacket packet;
  FrameKind kind = FrameKind::kUnknown;
  bool frame_start = false;
};

// Per-stream frame membership state. Packets without a start pattern inherit
// the open frame's kind; a marker bit closes the frame.
class FrameTracker {
 public:
  explicit FrameTracker(MediaCodec codec, const ClassifierOptions& options = {})
      : codec_(codec), options_(options) {}

  LabeledPacket label(const RtpPacket& packet);
  LabeledPacket label(RtpPacket&& packet);
  void reset();

  FrameKind current_kind() const { return current_; }

 private:
  MediaCodec codec_;
  ClassifierOptions options_;
  FrameKind current_ = FrameKind::kUnknown;
  bool at_frame_start_ = true;
};

// Labels a sender-ordered stream (one ssrc).
std::vector<LabeledPacket> annotate_stream(MediaCodec codec, std::span<const RtpPacket> packets,
                                           const ClassifierOptions& options = {});

}  // namespace kfdup

#endif  // KFDUP_KEYFRAME_HPP_
