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

#ifndef KFDUP_RNG_HPP_
#define KFDUP_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace kfdup {

// Counter-based randomness: every variate is a pure function of
// (seed, counters...), so a packet's draws do not depend on how many other
// packets were processed before it. The channel keys draws by the original
// packet index, which is what keeps matched-seed experiment arms coupled.
//
// All decisions reduce to integer hashes; the only floating-point ops are
// ldexp and libm (log/cos/sqrt) inside the Gaussian, so outputs are
// bit-stable across runs on a given platform.

// splitmix64 finalizer (Stafford variant 13).
constexpr uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr uint64_t hash_combine(uint64_t a, uint64_t b) { return mix64(a ^ mix64(b)); }

// Purpose tags keep draw streams disjoint.
enum class Draw : uint64_t {
  kInitState = 1,
  kTransition = 2,
  kMicroStep = 3,
  kLoss = 4,
  kThin = 5,
  kJitterA = 6,
  kJitterB = 7,
  kPayload = 8,
  kGenSeed = 9,
  kChannelSeed = 10,
};

inline uint64_t draw_u64(uint64_t seed, Draw purpose, uint64_t index, uint64_t sub = 0) {
  uint64_t h = hash_combine(seed, static_cast<uint64_t>(purpose));
  h = hash_combine(h, index);
  return hash_combine(h, sub);
}

// Uniform on [0,1) with 53 random bits.
inline double to_unit(uint64_t h) { return std::ldexp(static_cast<double>(h >> 11), -53); }

inline double draw_unit(uint64_t seed, Draw purpose, uint64_t index, uint64_t sub = 0) {
  return to_unit(draw_u64(seed, purpose, index, sub));
}

// Standard normal via Box-Muller from two keyed uniforms.
inline double draw_gauss(uint64_t seed, uint64_t index, uint64_t sub = 0) {
  double u1 = draw_unit(seed, Draw::kJitterA, index, sub);
  double u2 = draw_unit(seed, Draw::kJitterB, index, sub);
  // Guard u1 == 0; log(0) is -inf.
  double r = std::sqrt(-2.0 * std::log(u1 > 0.0 ? u1 : 0x1p-53));
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace kfdup

#endif  // KFDUP_RNG_HPP_
