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

#ifndef KFDUP_TYPES_HPP_
#define KFDUP_TYPES_HPP_

#include <cstdint>
#include <string_view>

namespace kfdup {

// All timestamps are integer microseconds. Keeping time integral end to end
// is what makes trace round-trips and re-analysis bit-exact.
using TimeMicros = int64_t;

constexpr double kMicrosPerSecond = 1e6;

constexpr double to_seconds(TimeMicros t) { return static_cast<double>(t) / kMicrosPerSecond; }

enum class MediaCodec { kMpeg2, kMpeg4Divx, kWmv9 };

enum class FrameKind { kKey, kDelta, kUnknown };

enum class NetworkKind { kWifi, kThreeG, kWimax };

enum class DupPolicy { kNone, kKeyFrames, kAll };

// Which packets of a key frame get copied: just the one carrying the
// frame-start pattern, or every packet of the frame.
enum class DupScope { kStartPacket, kWholeFrame };

std::string_view to_string(MediaCodec codec);
std::string_view to_string(FrameKind kind);
std::string_view to_string(NetworkKind network);
std::string_view to_string(DupPolicy policy);
std::string_view to_string(DupScope scope);

// Parsers accept the to_string spellings (lowercase). Throws ConfigMalformed.
MediaCodec codec_from_string(std::string_view name);
NetworkKind network_from_string(std::string_view name);
DupPolicy policy_from_string(std::string_view name);
DupScope scope_from_string(std::string_view name);

}  // namespace kfdup

#endif  // KFDUP_TYPES_HPP_
