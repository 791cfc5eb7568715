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

#include "kfdup/rtp.hpp"

#include <string>

#include "kfdup/errors.hpp"

namespace kfdup {

namespace {

uint16_t read_u16(std::span<const uint8_t> b, size_t at) {
  return static_cast<uint16_t>((b[at] << 8) | b[at + 1]);
}

uint32_t read_u32(std::span<const uint8_t> b, size_t at) {
  return (static_cast<uint32_t>(b[at]) << 24) | (static_cast<uint32_t>(b[at + 1]) << 16) |
         (static_cast<uint32_t>(b[at + 2]) << 8) | static_cast<uint32_t>(b[at + 3]);
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

}  // namespace

RtpPacket parse_rtp(std::span<const uint8_t> bytes) {
  if (bytes.size() < kRtpFixedHeaderSize) {
    throw Error(ErrorCode::kTooShort,
                "RTP datagram is " + std::to_string(bytes.size()) + " bytes, need at least 12");
  }
  const uint8_t b0 = bytes[0];
  const uint8_t version = b0 >> 6;
  if (version != 2) {
    throw Error(ErrorCode::kBadVersion, "RTP version " + std::to_string(version) + ", expected 2");
  }
  RtpPacket p;
  p.version = version;
  p.padding = (b0 & 0x20) != 0;
  p.extension = (b0 & 0x10) != 0;
  const int cc = b0 & 0x0f;
  p.marker = (bytes[1] & 0x80) != 0;
  p.payload_type = bytes[1] & 0x7f;
  p.sequence_number = read_u16(bytes, 2);
  p.timestamp = read_u32(bytes, 4);
  p.ssrc = read_u32(bytes, 8);

  const size_t header_size = kRtpFixedHeaderSize + 4 * static_cast<size_t>(cc);
  if (bytes.size() < header_size) {
    throw Error(ErrorCode::kTooShort, "header declares " + std::to_string(cc) +
                                          " CSRCs but datagram has only " +
                                          std::to_string(bytes.size()) + " bytes");
  }
  p.csrcs.reserve(cc);
  for (int i = 0; i < cc; ++i) {
    p.csrcs.push_back(read_u32(bytes, kRtpFixedHeaderSize + 4 * static_cast<size_t>(i)));
  }
  p.payload.assign(bytes.begin() + header_size, bytes.end());
  return p;
}

std::vector<uint8_t> serialize_rtp(const RtpPacket& p) {
  if (p.version != 2) {
    throw Error(ErrorCode::kFieldOutOfRange, "version must be 2");
  }
  if (p.payload_type > 127) {
    throw Error(ErrorCode::kFieldOutOfRange, "payload_type > 127");
  }
  if (p.csrcs.size() > 15) {
    throw Error(ErrorCode::kFieldOutOfRange, "more than 15 CSRCs");
  }
  std::vector<uint8_t> out;
  out.reserve(p.serialized_size());
  out.push_back(static_cast<uint8_t>((p.version << 6) | (p.padding ? 0x20 : 0) |
                                     (p.extension ? 0x10 : 0) | p.csrcs.size()));
  out.push_back(static_cast<uint8_t>((p.marker ? 0x80 : 0) | p.payload_type));
  put_u16(out, p.sequence_number);
  put_u32(out, p.timestamp);
  put_u32(out, p.ssrc);
  for (uint32_t csrc : p.csrcs) put_u32(out, csrc);
  out.insert(out.end(), p.payload.begin(), p.payload.end());
  return out;
}

std::pair<DatagramEnvelope, RtpPacket> parse_udp_ipv4(std::span<const uint8_t> datagram) {
  if (datagram.size() < 20) {
    throw Error(ErrorCode::kTruncatedHeader, "datagram shorter than a minimal IPv4 header");
  }
  const uint8_t version = datagram[0] >> 4;
  if (version != 4) {
    throw Error(ErrorCode::kNotIpv4, "IP version " + std::to_string(version));
  }
  const size_t ihl_bytes = static_cast<size_t>(datagram[0] & 0x0f) * 4;
  if (ihl_bytes < 20) {
    throw Error(ErrorCode::kTruncatedHeader, "IHL below 5 words");
  }
  if (datagram.size() < ihl_bytes + 8) {
    throw Error(ErrorCode::kTruncatedHeader, "datagram ends inside IP/UDP headers");
  }
  const uint8_t protocol = datagram[9];
  if (protocol != 17) {
    throw Error(ErrorCode::kNotUdp, "IP protocol " + std::to_string(protocol));
  }

  DatagramEnvelope env;
  for (int i = 0; i < 4; ++i) {
    env.src_addr[static_cast<size_t>(i)] = datagram[12 + static_cast<size_t>(i)];
    env.dst_addr[static_cast<size_t>(i)] = datagram[16 + static_cast<size_t>(i)];
  }
  env.src_port = read_u16(datagram, ihl_bytes);
  env.dst_port = read_u16(datagram, ihl_bytes + 2);
  const size_t udp_length = read_u16(datagram, ihl_bytes + 4);
  if (udp_length < 8 || datagram.size() < ihl_bytes + udp_length) {
    throw Error(ErrorCode::kTruncatedHeader, "UDP length field exceeds datagram");
  }
  auto udp_payload = datagram.subspan(ihl_bytes + 8, udp_length - 8);
  env.udp_payload.assign(udp_payload.begin(), udp_payload.end());
  RtpPacket rtp = parse_rtp(udp_payload);
  return {std::move(env), std::move(rtp)};
}

}  // namespace kfdup
