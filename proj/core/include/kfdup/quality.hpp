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

#ifndef KFDUP_QUALITY_HPP_
#define KFDUP_QUALITY_HPP_

#include <map>
#include <optional>
#include <utility>

#include "kfdup/types.hpp"

namespace kfdup {

// MOS = q_ideal - alpha*p - beta*j, with p in PERCENT and j in SECONDS.
// Separate coefficient pairs apply depending on whether the analysis window
// lost any key-frame packet.
struct Coefficient {
  double value = 0.0;
  double sigma = 0.0;  // uncertainty as printed; propagated root-sum-square
};

struct CoefficientEntry {
  Coefficient q_ideal;
  std::optional<Coefficient> alpha_key;   // MOS per loss-percent, key-loss branch
  std::optional<Coefficient> beta_key;    // MOS per second, key-loss branch
  std::optional<Coefficient> alpha_nokey;
  std::optional<Coefficient> beta_nokey;
};

class CoefficientTable {
 public:
  // The measured per-network, per-codec coefficients. Absent entries exist
  // only where the source prints none (WiMAX MPEG-2/WMV9 key-loss columns).
  static const CoefficientTable& builtin();

  const CoefficientEntry& at(NetworkKind network, MediaCodec codec) const;
  void set(NetworkKind network, MediaCodec codec, const CoefficientEntry& entry);

  const std::map<std::pair<NetworkKind, MediaCodec>, CoefficientEntry>& entries() const {
    return entries_;
  }

 private:
  std::map<std::pair<NetworkKind, MediaCodec>, CoefficientEntry> entries_;
};

struct MosEstimate {
  double raw = 0.0;    // unclamped model value
  double mos = 0.0;    // clamped to [1,5] for presentation
  double sigma = 0.0;  // sqrt(sq_q + (p*sq_alpha)^2 + (j*sq_beta)^2)
};

// Evaluates the model. An ABSENT coefficient only raises CoefficientAbsent
// when its multiplier is nonzero (0 * absent == 0), so both branches return
// q_ideal exactly at p=j=0. Throws Error{CoefficientAbsent, OutOfRange}.
MosEstimate predict_mos(const CoefficientTable& table, NetworkKind network, MediaCodec codec,
                        double loss_percent, double jitter_s, bool key_loss);

struct DegradationSplit {
  double loss_share = 0.0;    // alpha*p / (alpha*p + beta*j)
  double jitter_share = 0.0;  // beta*j / (alpha*p + beta*j)
};

// Shares sum to 1. Throws Error{NoDegradation} when alpha*p + beta*j == 0.
DegradationSplit degradation_split(const CoefficientTable& table, NetworkKind network,
                                   MediaCodec codec, double loss_percent, double jitter_s,
                                   bool key_loss);

enum class GapRating { kGood, kAcceptable, kPoor };

std::string_view to_string(GapRating rating);

// Defaults reproduce the published good/acceptable/poor labels for the three
// preset operating points; the source scale's exact bands are not given, so
// they stay configurable.
struct GapThresholds {
  double loss_good_max = 0.5;       // percent
  double loss_acceptable_max = 5.0;
  double jitter_good_max = 0.015;   // seconds
  double jitter_acceptable_max = 0.040;
};

struct GapResult {
  GapRating loss = GapRating::kGood;
  GapRating jitter = GapRating::kGood;
  GapRating overall = GapRating::kGood;  // worst of the two
};

GapResult gap_classify(double loss_percent, double jitter_s, const GapThresholds& t = {});

// Quality drop versus the unimpaired baseline: predict(0,0,no-key-loss).mos -
// predict(p,j,key_loss).mos. Errors propagate from predict_mos.
double degradation(const CoefficientTable& table, NetworkKind network, MediaCodec codec,
                   double loss_percent, double jitter_s, bool key_loss);

}  // namespace kfdup

#endif  // KFDUP_QUALITY_HPP_
