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

#ifndef KFDUP_RTP_HPP_
#define KFDUP_RTP_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace kfdup {

constexpr int kRtpFixedHeaderSize = 12;

// Parsed RTP datagram. Header extensions and padding are not interpreted:
// the X/P flags are preserved and their bytes ride along inside payload,
// which starts right after the fixed header and CSRC list.
struct RtpPacket {
  uint8_t version = 2;
  bool padding = false;
  bool extension = false;
  bool marker = false;
  uint8_t payload_type = 0;       // 0..127
  uint16_t sequence_number = 0;   // wrapping
  uint32_t timestamp = 0;
  uint32_t ssrc = 0;
  std::vector<uint32_t> csrcs;    // at most 15 entries
  std::vector<uint8_t> payload;

  int csrc_count() const { return static_cast<int>(csrcs.size()); }
  size_t serialized_size() const { return kRtpFixedHeaderSize + 4 * csrcs.size() + payload.size(); }

  bool operator==(const RtpPacket&) const = default;
};

struct DatagramEnvelope {
  std::array<uint8_t, 4> src_addr{};
  std::array<uint8_t, 4> dst_addr{};
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  std::vector<uint8_t> udp_payload;
};

// Throws Error{TooShort, BadVersion}. Never reads past `bytes`.
RtpPacket parse_rtp(std::span<const uint8_t> bytes);

// Bit-exact inverse of parse_rtp. Throws Error{FieldOutOfRange}.
std::vector<uint8_t> serialize_rtp(const RtpPacket& packet);

// Strips IPv4 (honoring IHL) and UDP headers, then parses the RTP payload.
// Checksums are not validated. Throws Error{NotIpv4, NotUdp, TruncatedHeader}
// plus parse_rtp errors.
std::pair<DatagramEnvelope, RtpPacket> parse_udp_ipv4(std::span<const uint8_t> datagram);

// Shortest signed distance from `from` to `to` on the 16-bit circle.
// Positive when `to` is ahead; seq_forward_distance(65535, 0) == 1.
inline int16_t seq_forward_distance(uint16_t from, uint16_t to) {
  return static_cast<int16_t>(static_cast<uint16_t>(to - from));
}

inline bool seq_newer(uint16_t a, uint16_t b) { return seq_forward_distance(b, a) > 0; }

// Unwraps 16-bit sequence numbers into monotone 64-bit packet ids. Duplicate
// copies of a packet map to the id of their original; reordered arrivals map
// relative to the newest id seen (correct while displacement < 32768).
class SeqUnwrapper {
 public:
  struct Result {
    int64_t id;
    bool is_new;  // true when this seq advances the stream (first copy)
  };

  // Pre-primed unwrapper mapping `seq` to `id`; used to align a receiver-side
  // stream with the sender's id space.
  static SeqUnwrapper anchored(uint16_t seq, int64_t id) {
    SeqUnwrapper u;
    u.primed_ = true;
    u.newest_seq_ = seq;
    u.newest_id_ = id;
    return u;
  }

  Result feed(uint16_t seq) {
    if (!primed_) {
      primed_ = true;
      newest_seq_ = seq;
      newest_id_ = 0;
      return {0, true};
    }
    int16_t d = seq_forward_distance(newest_seq_, seq);
    if (d > 0) {
      newest_seq_ = seq;
      newest_id_ += d;
      return {newest_id_, true};
    }
    return {newest_id_ + d, false};
  }

  void reset() { primed_ = false; }

 private:
  bool primed_ = false;
  uint16_t newest_seq_ = 0;
  int64_t newest_id_ = 0;
};

}  // namespace kfdup

#endif  // KFDUP_RTP_HPP_
