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

#include "kfdup/errors.hpp"

namespace kfdup {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooShort:
      return "TooShort";
    case ErrorCode::kBadVersion:
      return "BadVersion";
    case ErrorCode::kFieldOutOfRange:
      return "FieldOutOfRange";
    case ErrorCode::kNotIpv4:
      return "NotIpv4";
    case ErrorCode::kNotUdp:
      return "NotUdp";
    case ErrorCode::kTruncatedHeader:
      return "TruncatedHeader";
    case ErrorCode::kEmptyStream:
      return "EmptyStream";
    case ErrorCode::kEmptySent:
      return "EmptySent";
    case ErrorCode::kTooFewPackets:
      return "TooFewPackets";
    case ErrorCode::kDegenerateChain:
      return "DegenerateChain";
    case ErrorCode::kCoefficientAbsent:
      return "CoefficientAbsent";
    case ErrorCode::kOutOfRange:
      return "OutOfRange";
    case ErrorCode::kNoDegradation:
      return "NoDegradation";
    case ErrorCode::kSpecInvalid:
      return "SpecInvalid";
    case ErrorCode::kTraceMalformed:
      return "TraceMalformed";
    case ErrorCode::kSsrcMismatch:
      return "SsrcMismatch";
    case ErrorCode::kConfigMalformed:
      return "ConfigMalformed";
    case ErrorCode::kUnknownPreset:
      return "UnknownPreset";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace kfdup
