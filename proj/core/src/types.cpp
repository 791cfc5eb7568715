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

#include "kfdup/types.hpp"

#include <string>

#include "kfdup/errors.hpp"

namespace kfdup {

std::string_view to_string(MediaCodec codec) {
  switch (codec) {
    case MediaCodec::kMpeg2:
      return "mpeg2";
    case MediaCodec::kMpeg4Divx:
      return "divx";
    case MediaCodec::kWmv9:
      return "wmv9";
  }
  return "?";
}

std::string_view to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::kKey:
      return "key";
    case FrameKind::kDelta:
      return "delta";
    case FrameKind::kUnknown:
      return "unknown";
  }
  return "?";
}

std::string_view to_string(NetworkKind network) {
  switch (network) {
    case NetworkKind::kWifi:
      return "wifi";
    case NetworkKind::kThreeG:
      return "threeg";
    case NetworkKind::kWimax:
      return "wimax";
  }
  return "?";
}

std::string_view to_string(DupPolicy policy) {
  switch (policy) {
    case DupPolicy::kNone:
      return "none";
    case DupPolicy::kKeyFrames:
      return "key";
    case DupPolicy::kAll:
      return "all";
  }
  return "?";
}

std::string_view to_string(DupScope scope) {
  switch (scope) {
    case DupScope::kStartPacket:
      return "start-packet";
    case DupScope::kWholeFrame:
      return "whole-frame";
  }
  return "?";
}

namespace {
[[noreturn]] void bad_name(const char* what, std::string_view name) {
  throw Error(ErrorCode::kConfigMalformed,
              std::string("unknown ") + what + " '" + std::string(name) + "'");
}
}  // namespace

MediaCodec codec_from_string(std::string_view name) {
  if (name == "mpeg2") return MediaCodec::kMpeg2;
  if (name == "divx" || name == "mpeg4" || name == "mpeg4-divx") return MediaCodec::kMpeg4Divx;
  if (name == "wmv9") return MediaCodec::kWmv9;
  bad_name("codec", name);
}

NetworkKind network_from_string(std::string_view name) {
  if (name == "wifi") return NetworkKind::kWifi;
  if (name == "threeg" || name == "3g") return NetworkKind::kThreeG;
  if (name == "wimax") return NetworkKind::kWimax;
  bad_name("network", name);
}

DupPolicy policy_from_string(std::string_view name) {
  if (name == "none") return DupPolicy::kNone;
  if (name == "key" || name == "key-frames") return DupPolicy::kKeyFrames;
  if (name == "all") return DupPolicy::kAll;
  bad_name("policy", name);
}

DupScope scope_from_string(std::string_view name) {
  if (name == "start-packet") return DupScope::kStartPacket;
  if (name == "whole-frame") return DupScope::kWholeFrame;
  bad_name("dup scope", name);
}

}  // namespace kfdup
