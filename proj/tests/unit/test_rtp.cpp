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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "kfdup/errors.hpp"
#include "kfdup/rtp.hpp"

using namespace kfdup;

namespace {

RtpPacket random_packet(std::mt19937_64& rng, size_t max_payload = 1400) {
  std::uniform_int_distribution<uint32_t> u32;
  std::uniform_int_distribution<int> bit(0, 1);
  RtpPacket p;
  p.padding = bit(rng) != 0;
  p.extension = bit(rng) != 0;
  p.marker = bit(rng) != 0;
  p.payload_type = static_cast<uint8_t>(u32(rng) & 0x7f);
  p.sequence_number = static_cast<uint16_t>(u32(rng));
  p.timestamp = u32(rng);
  p.ssrc = u32(rng);
  size_t n_csrc = u32(rng) % 16;
  for (size_t i = 0; i < n_csrc; ++i) p.csrcs.push_back(u32(rng));
  size_t n = u32(rng) % (max_payload + 1);
  p.payload.resize(n);
  for (auto& b : p.payload) b = static_cast<uint8_t>(u32(rng));
  return p;
}

}  // namespace

TEST_CASE("parse_rtp decodes a minimal 12-byte header") {
  std::vector<uint8_t> bytes = {0x80, 0x60, 0x00, 0x01, 0, 0, 0, 0, 0, 0, 0, 0};
  RtpPacket p = parse_rtp(bytes);
  CHECK(p.version == 2);
  CHECK_FALSE(p.padding);
  CHECK_FALSE(p.extension);
  CHECK_FALSE(p.marker);
  CHECK(p.payload_type == 96);
  CHECK(p.sequence_number == 1);
  CHECK(p.timestamp == 0);
  CHECK(p.ssrc == 0);
  CHECK(p.csrcs.empty());
  CHECK(p.payload.empty());
}

TEST_CASE("parse_rtp rejects version 1") {
  std::vector<uint8_t> bytes(12, 0);
  bytes[0] = 0x40;
  CHECK_THROWS_WITH_AS(parse_rtp(bytes), doctest::Contains("version"), Error);
  try {
    parse_rtp(bytes);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadVersion);
  }
}

TEST_CASE("parse_rtp rejects short input with a typed error") {
  for (size_t n = 0; n < 12; ++n) {
    std::vector<uint8_t> bytes(n, 0x80);
    try {
      parse_rtp(bytes);
      FAIL("expected TooShort for length ", n);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kTooShort);
    }
  }
}

TEST_CASE("CSRC words are consumed by the header, not the payload") {
  // 20 bytes, csrc_count=2: header swallows everything, payload is empty.
  // Hand layout: 0x82 = version 2, cc=2.
  std::vector<uint8_t> bytes = {0x82, 0x60, 0x12, 0x34,              // flags, pt, seq 0x1234
                                0x00, 0x00, 0x00, 0x01,              // timestamp 1
                                0xde, 0xad, 0xbe, 0xef,              // ssrc
                                0x00, 0x00, 0x00, 0x0a,              // csrc[0] = 10
                                0x00, 0x00, 0x00, 0x0b};             // csrc[1] = 11
  RtpPacket p = parse_rtp(bytes);
  CHECK(p.csrc_count() == 2);
  CHECK(p.csrcs == std::vector<uint32_t>{10, 11});
  CHECK(p.payload.empty());
  CHECK(serialize_rtp(p) == bytes);

  // One byte fewer is a truncated CSRC list.
  bytes.pop_back();
  try {
    parse_rtp(bytes);
    FAIL("expected TooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooShort);
  }
}

TEST_CASE("serialize_rtp zero packet and max sequence") {
  RtpPacket p;
  auto bytes = serialize_rtp(p);
  REQUIRE(bytes.size() == 12);
  CHECK(bytes[0] == 0x80);
  CHECK(bytes[1] == 0x00);

  p.sequence_number = 65535;
  bytes = serialize_rtp(p);
  CHECK(bytes[2] == 0xff);
  CHECK(bytes[3] == 0xff);
}

TEST_CASE("serialize_rtp validates field ranges") {
  RtpPacket p;
  p.version = 1;
  CHECK_THROWS_AS(serialize_rtp(p), Error);
  p = RtpPacket{};
  p.csrcs.assign(16, 0);
  try {
    serialize_rtp(p);
    FAIL("expected FieldOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFieldOutOfRange);
  }
}

TEST_CASE("parse/serialize round-trip on randomized packets") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    RtpPacket p = random_packet(rng);
    auto bytes = serialize_rtp(p);
    CHECK(bytes.size() == p.serialized_size());
    RtpPacket back = parse_rtp(bytes);
    REQUIRE(back == p);
    CHECK(serialize_rtp(back) == bytes);
  }
}

TEST_CASE("parse_udp_ipv4 strips IP and UDP headers") {
  // Minimal IPv4 (IHL=5) + UDP + the 12-byte RTP header from above.
  std::vector<uint8_t> rtp = {0x80, 0x60, 0x00, 0x01, 0, 0, 0, 0, 0, 0, 0, 0};
  std::vector<uint8_t> dgram = {
      0x45, 0x00, 0x00, 0x28,  // version/IHL, TOS, total length 40
      0x00, 0x00, 0x00, 0x00,  // id, flags/fragment
      0x40, 0x11, 0x00, 0x00,  // TTL 64, protocol 17 (UDP), checksum
      0x0a, 0x00, 0x00, 0x01,  // src 10.0.0.1
      0x0a, 0x00, 0x00, 0x02,  // dst 10.0.0.2
      0x13, 0x88, 0x13, 0x8c,  // ports 5000 -> 5004
      0x00, 0x14, 0x00, 0x00,  // UDP length 20, checksum
  };
  dgram.insert(dgram.end(), rtp.begin(), rtp.end());

  auto [env, packet] = parse_udp_ipv4(dgram);
  CHECK(env.src_port == 5000);
  CHECK(env.dst_port == 5004);
  CHECK(env.src_addr == std::array<uint8_t, 4>{10, 0, 0, 1});
  CHECK(env.dst_addr == std::array<uint8_t, 4>{10, 0, 0, 2});
  CHECK(env.udp_payload == rtp);
  CHECK(packet.payload_type == 96);
  CHECK(packet.sequence_number == 1);

  SUBCASE("IPv6 nibble is rejected") {
    dgram[0] = 0x65;
    try {
      parse_udp_ipv4(dgram);
      FAIL("expected NotIpv4");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotIpv4);
    }
  }
  SUBCASE("TCP protocol is rejected") {
    dgram[9] = 0x06;
    try {
      parse_udp_ipv4(dgram);
      FAIL("expected NotUdp");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotUdp);
    }
  }
  SUBCASE("UDP length larger than the datagram is rejected") {
    dgram[24] = 0x00;
    dgram[25] = 0xff;
    try {
      parse_udp_ipv4(dgram);
      FAIL("expected TruncatedHeader");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kTruncatedHeader);
    }
  }
  SUBCASE("IHL options are honored") {
    // Rebuild with IHL=6 (one option word).
    std::vector<uint8_t> opt_dgram(dgram.begin(), dgram.begin() + 20);
    opt_dgram[0] = 0x46;
    opt_dgram[3] = 0x2c;  // total length 44
    opt_dgram.insert(opt_dgram.end(), {0x01, 0x01, 0x01, 0x01});
    opt_dgram.insert(opt_dgram.end(), dgram.begin() + 20, dgram.end());
    auto [env2, packet2] = parse_udp_ipv4(opt_dgram);
    CHECK(env2.src_port == 5000);
    CHECK(packet2.sequence_number == 1);
  }
}

TEST_CASE("sequence distance wraps: 65535 -> 0 is a forward step of 1") {
  CHECK(seq_forward_distance(65535, 0) == 1);
  CHECK(seq_forward_distance(0, 65535) == -1);
  CHECK(seq_forward_distance(5, 5) == 0);
  CHECK(seq_newer(0, 65535));
  CHECK_FALSE(seq_newer(65535, 0));
  CHECK(seq_newer(40000, 8000));          // +32000, still ahead
  CHECK_FALSE(seq_newer(40768, 8000));    // exactly half the circle counts as older
}

TEST_CASE("SeqUnwrapper assigns monotone ids across wrap") {
  SeqUnwrapper u;
  CHECK(u.feed(65534).id == 0);
  CHECK(u.feed(65535).id == 1);
  auto r = u.feed(0);
  CHECK(r.id == 2);
  CHECK(r.is_new);
  r = u.feed(65535);  // reordered copy
  CHECK(r.id == 1);
  CHECK_FALSE(r.is_new);

  SeqUnwrapper a = SeqUnwrapper::anchored(100, 0);
  CHECK(a.feed(103).id == 3);
  CHECK(a.feed(101).id == 1);
  CHECK(a.feed(100).id == 0);
}
