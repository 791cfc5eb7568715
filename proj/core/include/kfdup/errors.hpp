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

#ifndef KFDUP_ERRORS_HPP_
#define KFDUP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace kfdup {

// Typed failure taxonomy. The CLI prints the code name on stderr and exits
// nonzero; tests match on code().
enum class ErrorCode {
  kTooShort,
  kBadVersion,
  kFieldOutOfRange,
  kNotIpv4,
  kNotUdp,
  kTruncatedHeader,
  kEmptyStream,
  kEmptySent,
  kTooFewPackets,
  kDegenerateChain,
  kCoefficientAbsent,
  kOutOfRange,
  kNoDegradation,
  kSpecInvalid,
  kTraceMalformed,
  kSsrcMismatch,
  kConfigMalformed,
  kUnknownPreset,
  kIoError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }
  const char* name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace kfdup

#endif  // KFDUP_ERRORS_HPP_
