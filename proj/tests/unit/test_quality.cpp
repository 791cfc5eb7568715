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
#include <cmath>

#include "doctest.h"
#include "kfdup/config.hpp"
#include "kfdup/errors.hpp"
#include "kfdup/quality.hpp"

using namespace kfdup;

namespace {
const CoefficientTable& table() { return CoefficientTable::builtin(); }

constexpr NetworkKind kNets[] = {NetworkKind::kWifi, NetworkKind::kThreeG, NetworkKind::kWimax};
constexpr MediaCodec kCodecs[] = {MediaCodec::kMpeg2, MediaCodec::kMpeg4Divx, MediaCodec::kWmv9};
}  // namespace

TEST_CASE("zero impairment returns q_ideal exactly, on both branches of all 9 entries") {
  for (NetworkKind n : kNets) {
    for (MediaCodec c : kCodecs) {
      double q_ideal = table().at(n, c).q_ideal.value;
      for (bool key_loss : {false, true}) {
        MosEstimate est = predict_mos(table(), n, c, 0.0, 0.0, key_loss);
        CHECK(est.raw == q_ideal);
        CHECK(est.mos == q_ideal);
      }
    }
  }
  MosEstimate wifi_mpeg2 = predict_mos(table(), NetworkKind::kWifi, MediaCodec::kMpeg2, 0, 0, false);
  CHECK(wifi_mpeg2.mos == 4.2);
  CHECK(wifi_mpeg2.sigma == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("hand-evaluated points match to double precision") {
  // 3G / DivX, key branch at p=10, j=0.1.
  MosEstimate est = predict_mos(table(), NetworkKind::kThreeG, MediaCodec::kMpeg4Divx, 10, 0.1, true);
  CHECK(est.raw == 4.7 - 0.22 * 10 - 13 * 0.1);
  CHECK(est.raw == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(est.mos == est.raw);  // inside [1,5], no clamping

  // Wi-Fi / DivX, key branch at the published Wi-Fi operating point.
  est = predict_mos(table(), NetworkKind::kWifi, MediaCodec::kMpeg4Divx, 6, 0.020, true);
  CHECK(est.raw == 4.7 - 0.25 * 6 - 15 * 0.020);
  CHECK(est.mos == doctest::Approx(2.9).epsilon(1e-12));

  // Uncertainty propagation: rss of sigma_q, p*sigma_alpha, j*sigma_beta.
  double expected_sigma = std::sqrt(0.2 * 0.2 + (10 * 0.05) * (10 * 0.05) + (0.1 * 5) * (0.1 * 5));
  est = predict_mos(table(), NetworkKind::kThreeG, MediaCodec::kMpeg4Divx, 10, 0.1, true);
  CHECK(est.sigma == doctest::Approx(expected_sigma).epsilon(1e-12));
}

TEST_CASE("clamping to the MOS scale") {
  // Wi-Fi / DivX key branch at p=40 drives the raw value below 1.
  MosEstimate est = predict_mos(table(), NetworkKind::kWifi, MediaCodec::kMpeg4Divx, 40, 0.1, true);
  CHECK(est.raw < 1.0);
  CHECK(est.mos == 1.0);
}

TEST_CASE("the unpublished WiMAX key-loss cells surface CoefficientAbsent") {
  for (MediaCodec c : {MediaCodec::kMpeg2, MediaCodec::kWmv9}) {
    try {
      predict_mos(table(), NetworkKind::kWimax, c, 0.5, 0.0, true);
      FAIL("expected CoefficientAbsent");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCoefficientAbsent);
    }
    // Jitter-only impairment needs beta_key, also unpublished.
    try {
      predict_mos(table(), NetworkKind::kWimax, c, 0.0, 0.010, true);
      FAIL("expected CoefficientAbsent");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCoefficientAbsent);
    }
    // With zero multipliers the absent coefficients are never touched.
    CHECK(predict_mos(table(), NetworkKind::kWimax, c, 0.0, 0.0, true).mos ==
          table().at(NetworkKind::kWimax, c).q_ideal.value);
    // The no-key-loss branch is published and works.
    CHECK_NOTHROW(predict_mos(table(), NetworkKind::kWimax, c, 0.5, 0.010, false));
  }
}

TEST_CASE("inputs outside the model's domain are rejected") {
  for (auto [p, j] : {std::pair{-1.0, 0.0}, {101.0, 0.0}, {0.0, -0.1}}) {
    try {
      predict_mos(table(), NetworkKind::kWifi, MediaCodec::kMpeg2, p, j, false);
      FAIL("expected OutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kOutOfRange);
    }
  }
}

TEST_CASE("monotonicity: raw MOS never increases with p or j") {
  for (NetworkKind n : kNets) {
    for (MediaCodec c : kCodecs) {
      for (bool key_loss : {false, true}) {
        if (n == NetworkKind::kWimax && c != MediaCodec::kMpeg4Divx && key_loss) continue;
        double prev = predict_mos(table(), n, c, 0, 0, key_loss).raw;
        for (double p = 1; p <= 50; p += 7) {
          double cur = predict_mos(table(), n, c, p, 0, key_loss).raw;
          CHECK(cur <= prev);
          prev = cur;
        }
        prev = predict_mos(table(), n, c, 0, 0, key_loss).raw;
        for (double j = 0.01; j <= 0.3; j += 0.04) {
          double cur = predict_mos(table(), n, c, 0, j, key_loss).raw;
          CHECK(cur <= prev);
          prev = cur;
        }
      }
    }
  }
}

TEST_CASE("transcription integrity: key-branch coefficients dominate where both exist") {
  for (NetworkKind n : kNets) {
    for (MediaCodec c : kCodecs) {
      const CoefficientEntry& e = table().at(n, c);
      if (e.alpha_key && e.alpha_nokey) CHECK(e.alpha_key->value >= e.alpha_nokey->value);
      if (e.beta_key && e.beta_nokey) CHECK(e.beta_key->value >= e.beta_nokey->value);
      CHECK(e.q_ideal.value > 0.0);
      CHECK(e.q_ideal.value <= 5.0);
    }
  }
}

TEST_CASE("degradation split shares and edge cases") {
  auto split = degradation_split(table(), NetworkKind::kWifi, MediaCodec::kMpeg4Divx, 6, 0, true);
  CHECK(split.loss_share == 1.0);
  CHECK(split.jitter_share == 0.0);

  split = degradation_split(table(), NetworkKind::kWifi, MediaCodec::kMpeg4Divx, 0, 0.02, true);
  CHECK(split.loss_share == 0.0);
  CHECK(split.jitter_share == 1.0);

  // The Wi-Fi operating point: alpha*p = 1.5, beta*j = 0.3 -> 5/6 vs 1/6.
  split = degradation_split(table(), NetworkKind::kWifi, MediaCodec::kMpeg4Divx, 6, 0.020, true);
  CHECK(split.loss_share == doctest::Approx(1.5 / 1.8).epsilon(1e-9));
  CHECK(split.loss_share + split.jitter_share == doctest::Approx(1.0).epsilon(1e-15));

  try {
    degradation_split(table(), NetworkKind::kWifi, MediaCodec::kMpeg4Divx, 0, 0, true);
    FAIL("expected NoDegradation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoDegradation);
  }
}

TEST_CASE("GAP classification reproduces the published ratings") {
  GapResult r = gap_classify(6.0, 0.020);
  CHECK(r.loss == GapRating::kPoor);
  CHECK(r.jitter == GapRating::kAcceptable);
  CHECK(r.overall == GapRating::kPoor);

  r = gap_classify(10.5, 0.035);
  CHECK(r.loss == GapRating::kPoor);
  CHECK(r.jitter == GapRating::kAcceptable);
  CHECK(r.overall == GapRating::kPoor);

  r = gap_classify(0.2, 0.015);
  CHECK(r.loss == GapRating::kGood);
  CHECK(r.jitter == GapRating::kGood);
  CHECK(r.overall == GapRating::kGood);

  // Boundaries are inclusive on the good side.
  CHECK(gap_classify(0.5, 0.015).overall == GapRating::kGood);
  CHECK(gap_classify(5.0, 0.040).overall == GapRating::kAcceptable);
  CHECK(gap_classify(5.0001, 0.040).overall == GapRating::kPoor);
}

TEST_CASE("degradation versus the unimpaired baseline") {
  CHECK(degradation(table(), NetworkKind::kWifi, MediaCodec::kMpeg4Divx, 0, 0, false) == 0.0);
  double dq = degradation(table(), NetworkKind::kWifi, MediaCodec::kMpeg4Divx, 6, 0.020, true);
  CHECK(dq == doctest::Approx(1.8).epsilon(1e-12));
}

TEST_CASE("coefficient table round-trips through the config format") {
  std::string text = table_to_config(table());
  Config cfg = Config::parse_text(text);
  CoefficientTable rebuilt = cfg.apply_table(CoefficientTable::builtin());
  for (NetworkKind n : kNets) {
    for (MediaCodec c : kCodecs) {
      const CoefficientEntry& a = table().at(n, c);
      const CoefficientEntry& b = rebuilt.at(n, c);
      CHECK(a.q_ideal.value == b.q_ideal.value);
      CHECK(a.alpha_key.has_value() == b.alpha_key.has_value());
      if (a.alpha_key) {
        CHECK(a.alpha_key->value == b.alpha_key->value);
        CHECK(a.alpha_key->sigma == b.alpha_key->sigma);
      }
      CHECK(a.beta_nokey->value == b.beta_nokey->value);
    }
  }

  // A config override can blank a cell or change a value.
  Config override_cfg = Config::parse_text(
      "version = 1\n"
      "table.wifi.divx.alpha_key = 0.33 0.01\n"
      "table.wifi.divx.beta_key = -\n");
  CoefficientTable patched = override_cfg.apply_table(CoefficientTable::builtin());
  const CoefficientEntry& e = patched.at(NetworkKind::kWifi, MediaCodec::kMpeg4Divx);
  CHECK(e.alpha_key->value == 0.33);
  CHECK_FALSE(e.beta_key.has_value());
}
