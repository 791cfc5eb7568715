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

#ifndef KFDUP_TRACE_HPP_
#define KFDUP_TRACE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kfdup/types.hpp"

namespace kfdup {

// One packet event. Stands in for a sniffer capture; line-delimited text so
// fixtures stay diffable. Payload bytes are optional (size-only traces are
// allowed; labels and payloads travel when present).
struct PacketRecord {
  enum class Direction : uint8_t { kSent, kDelivered };

  Direction direction = Direction::kSent;
  TimeMicros time_us = 0;  // send time for kSent, arrival time for kDelivered
  uint16_t seq = 0;
  bool marker = false;
  uint8_t payload_type = 0;
  uint32_t ssrc = 0;
  uint32_t payload_size = 0;
  std::optional<FrameKind> frame_kind;
  std::optional<std::vector<uint8_t>> payload;

  bool operator==(const PacketRecord&) const = default;
};

// Text format, one record per line after a `kfdup-trace 1` header:
//   S|D <time seconds, 6 decimals> <seq> <marker 0|1> <pt> <ssrc> <size> <kind K|D|U|-> <payload b64|->
void write_trace(std::ostream& out, std::span<const PacketRecord> records);
void write_trace_file(const std::string& path, std::span<const PacketRecord> records);

// Throws Error{TraceMalformed} with the offending line number.
std::vector<PacketRecord> read_trace(std::istream& in, const std::string& origin = "<stream>");
std::vector<PacketRecord> read_trace_file(const std::string& path);

std::string base64_encode(std::span<const uint8_t> bytes);
std::vector<uint8_t> base64_decode(std::string_view text);  // Error{TraceMalformed}

}  // namespace kfdup

#endif  // KFDUP_TRACE_HPP_
