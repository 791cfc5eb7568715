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

#include "kfdup/keyframe.hpp"

namespace kfdup {

namespace {

constexpr uint8_t kMpeg2PictureStart = 0x00;
constexpr uint8_t kMpeg4VopStart = 0xb6;

// First decodable frame start in the payload, or UNKNOWN. Start codes split
// across packet boundaries are not detected; FrameTracker inheritance covers
// continuation packets instead.
FrameKind scan_start_codes(std::span<const uint8_t> p, uint8_t frame_start_code, bool mpeg2) {
  if (p.size() < 4) return FrameKind::kUnknown;
  for (size_t i = 0; i + 4 <= p.size(); ++i) {
    if (p[i] != 0x00 || p[i + 1] != 0x00 || p[i + 2] != 0x01) continue;
    if (p[i + 3] != frame_start_code) continue;
    if (mpeg2) {
      // 10 bits temporal_reference, then 3 bits picture_coding_type.
      if (i + 6 > p.size()) continue;
      uint8_t coding_type = (p[i + 5] >> 3) & 0x07;
      if (coding_type == 1) return FrameKind::kKey;
      if (coding_type >= 2 && coding_type <= 4) return FrameKind::kDelta;
      continue;  // forbidden value, keep scanning
    }
    if (i + 5 > p.size()) continue;
    uint8_t vop_type = p[i + 4] >> 6;
    return vop_type == 0 ? FrameKind::kKey : FrameKind::kDelta;
  }
  return FrameKind::kUnknown;
}

}  // namespace

FrameKind classify_payload(MediaCodec codec, std::span<const uint8_t> payload,
                           const ClassifierOptions& options) {
  switch (codec) {
    case MediaCodec::kMpeg2:
      return scan_start_codes(payload, kMpeg2PictureStart, true);
    case MediaCodec::kMpeg4Divx:
      return scan_start_codes(payload, kMpeg4VopStart, false);
    case MediaCodec::kWmv9: {
      if (payload.empty()) return FrameKind::kUnknown;
      int bit = options.wmv9_key_bit;
      if (bit < 0 || bit > 7) bit = 7;
      return (payload[0] >> bit) & 0x01 ? FrameKind::kKey : FrameKind::kDelta;
    }
  }
  return FrameKind::kUnknown;
}

LabeledPacket FrameTracker::label(const RtpPacket& packet) {
  RtpPacket copy = packet;
  return label(std::move(copy));
}

LabeledPacket FrameTracker::label(RtpPacket&& packet) {
  FrameKind found = FrameKind::kUnknown;
  bool is_start = false;
  if (codec_ == MediaCodec::kWmv9) {
    // No start code to scan for: only the packet at a frame-start position
    // carries the indicator bit.
    if (at_frame_start_ && !packet.payload.empty()) {
      found = classify_payload(codec_, packet.payload, options_);
      is_start = found != FrameKind::kUnknown;
    }
  } else {
    found = classify_payload(codec_, packet.payload, options_);
    is_start = found != FrameKind::kUnknown;
  }

  LabeledPacket out;
  out.kind = is_start ? found : current_;
  out.frame_start = is_start;
  if (is_start) current_ = found;
  if (packet.marker) {
    // Marker closes the frame; anything before the next start is UNKNOWN.
    current_ = FrameKind::kUnknown;
    at_frame_start_ = true;
  } else {
    at_frame_start_ = false;
  }
  out.packet = std::move(packet);
  return out;
}

void FrameTracker::reset() {
  current_ = FrameKind::kUnknown;
  at_frame_start_ = true;
}

std::vector<LabeledPacket> annotate_stream(MediaCodec codec, std::span<const RtpPacket> packets,
                                           const ClassifierOptions& options) {
  FrameTracker tracker(codec, options);
  std::vector<LabeledPacket> out;
  out.reserve(packets.size());
  for (const RtpPacket& p : packets) out.push_back(tracker.label(p));
  return out;
}

}  // namespace kfdup
