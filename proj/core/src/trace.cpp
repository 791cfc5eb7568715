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

#include "kfdup/trace.hpp"

#include <array>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kfdup/errors.hpp"

namespace kfdup {

namespace {

constexpr char kHeader[] = "kfdup-trace 1";
constexpr char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

char kind_letter(FrameKind k) {
  switch (k) {
    case FrameKind::kKey:
      return 'K';
    case FrameKind::kDelta:
      return 'D';
    case FrameKind::kUnknown:
      return 'U';
  }
  return 'U';
}

[[noreturn]] void malformed(const std::string& origin, int line, const std::string& what) {
  throw Error(ErrorCode::kTraceMalformed, origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string base64_encode(std::span<const uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(kB64Alphabet[(v >> 18) & 0x3f]);
    out.push_back(kB64Alphabet[(v >> 12) & 0x3f]);
    out.push_back(kB64Alphabet[(v >> 6) & 0x3f]);
    out.push_back(kB64Alphabet[v & 0x3f]);
  }
  size_t rest = bytes.size() - i;
  if (rest == 1) {
    uint32_t v = bytes[i] << 16;
    out.push_back(kB64Alphabet[(v >> 18) & 0x3f]);
    out.push_back(kB64Alphabet[(v >> 12) & 0x3f]);
    out.append("==");
  } else if (rest == 2) {
    uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out.push_back(kB64Alphabet[(v >> 18) & 0x3f]);
    out.push_back(kB64Alphabet[(v >> 12) & 0x3f]);
    out.push_back(kB64Alphabet[(v >> 6) & 0x3f]);
    out.push_back('=');
  }
  return out;
}

std::vector<uint8_t> base64_decode(std::string_view text) {
  std::array<int8_t, 256> rev;
  rev.fill(-1);
  for (int i = 0; i < 64; ++i) rev[static_cast<uint8_t>(kB64Alphabet[i])] = static_cast<int8_t>(i);

  std::vector<uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  uint32_t acc = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=') break;
    int8_t v = rev[static_cast<uint8_t>(c)];
    if (v < 0) throw Error(ErrorCode::kTraceMalformed, "invalid base64 character");
    acc = (acc << 6) | static_cast<uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<uint8_t>(acc >> bits));
    }
  }
  return out;
}

void write_trace(std::ostream& out, std::span<const PacketRecord> records) {
  out << kHeader << "\n";
  char line[96];
  for (const PacketRecord& r : records) {
    int64_t whole = r.time_us / 1'000'000;
    int64_t frac = r.time_us % 1'000'000;
    std::snprintf(line, sizeof(line), "%c %" PRId64 ".%06" PRId64 " %u %u %u %u %u %c",
                  r.direction == PacketRecord::Direction::kSent ? 'S' : 'D', whole, frac,
                  static_cast<unsigned>(r.seq), r.marker ? 1u : 0u,
                  static_cast<unsigned>(r.payload_type), r.ssrc, r.payload_size,
                  r.frame_kind ? kind_letter(*r.frame_kind) : '-');
    // A present-but-empty payload writes a lone pad char so the field count
    // stays fixed; it decodes back to zero bytes.
    std::string payload_field = "-";
    if (r.payload) payload_field = r.payload->empty() ? "=" : base64_encode(*r.payload);
    out << line << ' ' << payload_field << "\n";
  }
}

void write_trace_file(const std::string& path, std::span<const PacketRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write trace file '" + path + "'");
  write_trace(out, records);
  if (!out.good()) throw Error(ErrorCode::kIoError, "short write to '" + path + "'");
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    size_t end = pos;
    while (end < line.size() && line[end] != ' ') ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
T parse_int(std::string_view f, const std::string& origin, int line, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size()) {
    malformed(origin, line, std::string("bad ") + what + " '" + std::string(f) + "'");
  }
  return v;
}

TimeMicros parse_time(std::string_view f, const std::string& origin, int line) {
  size_t dot = f.find('.');
  std::string_view whole = dot == std::string_view::npos ? f : f.substr(0, dot);
  int64_t seconds = parse_int<int64_t>(whole, origin, line, "time");
  int64_t micros = 0;
  if (dot != std::string_view::npos) {
    std::string_view frac = f.substr(dot + 1);
    if (frac.empty() || frac.size() > 6) malformed(origin, line, "time needs 1..6 decimals");
    int64_t scale = 100'000;
    for (char c : frac) {
      if (c < '0' || c > '9') malformed(origin, line, "bad time fraction");
      micros += (c - '0') * scale;
      scale /= 10;
    }
  }
  return seconds * 1'000'000 + micros;
}

}  // namespace

std::vector<PacketRecord> read_trace(std::istream& in, const std::string& origin) {
  std::vector<PacketRecord> out;
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) malformed(origin, 1, "empty file, expected header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) malformed(origin, 1, "expected header '" + std::string(kHeader) + "'");

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_fields(line);
    if (f.size() != 9) malformed(origin, line_no, "expected 9 fields");

    PacketRecord r;
    if (f[0] == "S") {
      r.direction = PacketRecord::Direction::kSent;
    } else if (f[0] == "D") {
      r.direction = PacketRecord::Direction::kDelivered;
    } else {
      malformed(origin, line_no, "direction must be S or D");
    }
    r.time_us = parse_time(f[1], origin, line_no);
    r.seq = parse_int<uint16_t>(f[2], origin, line_no, "seq");
    uint32_t marker = parse_int<uint32_t>(f[3], origin, line_no, "marker");
    if (marker > 1) malformed(origin, line_no, "marker must be 0 or 1");
    r.marker = marker == 1;
    uint32_t pt = parse_int<uint32_t>(f[4], origin, line_no, "payload type");
    if (pt > 127) malformed(origin, line_no, "payload type > 127");
    r.payload_type = static_cast<uint8_t>(pt);
    r.ssrc = parse_int<uint32_t>(f[5], origin, line_no, "ssrc");
    r.payload_size = parse_int<uint32_t>(f[6], origin, line_no, "payload size");
    if (f[7] == "K") {
      r.frame_kind = FrameKind::kKey;
    } else if (f[7] == "D") {
      r.frame_kind = FrameKind::kDelta;
    } else if (f[7] == "U") {
      r.frame_kind = FrameKind::kUnknown;
    } else if (f[7] != "-") {
      malformed(origin, line_no, "frame kind must be K, D, U or -");
    }
    if (f[8] != "-") {
      try {
        r.payload = base64_decode(f[8]);
      } catch (const Error&) {
        malformed(origin, line_no, "bad base64 payload");
      }
      if (r.payload->size() != r.payload_size) {
        malformed(origin, line_no, "payload bytes do not match declared size");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PacketRecord> read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open trace file '" + path + "'");
  return read_trace(in, path);
}

}  // namespace kfdup
