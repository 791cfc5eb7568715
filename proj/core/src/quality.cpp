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

#include "kfdup/quality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kfdup/errors.hpp"

namespace kfdup {

namespace {

CoefficientEntry entry(double q, double sq, std::optional<Coefficient> ak,
                       std::optional<Coefficient> bk, Coefficient aw, Coefficient bw) {
  CoefficientEntry e;
  e.q_ideal = {q, sq};
  e.alpha_key = ak;
  e.beta_key = bk;
  e.alpha_nokey = aw;
  e.beta_nokey = bw;
  return e;
}

CoefficientTable make_builtin() {
  using N = NetworkKind;
  using C = MediaCodec;
  CoefficientTable t;
  // Wi-Fi
  t.set(N::kWifi, C::kMpeg2, entry(4.2, 0.2, Coefficient{0.11, 0.03}, Coefficient{15, 4},
                                   {0.06, 0.02}, {10, 4}));
  t.set(N::kWifi, C::kMpeg4Divx, entry(4.7, 0.2, Coefficient{0.25, 0.05}, Coefficient{15, 5},
                                       {0.17, 0.02}, {10, 3}));
  t.set(N::kWifi, C::kWmv9, entry(4.7, 0.2, Coefficient{0.25, 0.11}, Coefficient{20, 8},
                                  {0.16, 0.6}, {10, 3}));
  // 3G
  t.set(N::kThreeG, C::kMpeg2, entry(4.2, 0.2, Coefficient{0.12, 0.02}, Coefficient{10, 2},
                                     {0.06, 0.01}, {5, 1}));
  t.set(N::kThreeG, C::kMpeg4Divx, entry(4.7, 0.2, Coefficient{0.22, 0.05}, Coefficient{13, 5},
                                         {0.12, 0.05}, {8, 3}));
  t.set(N::kThreeG, C::kWmv9, entry(4.7, 0.2, Coefficient{0.32, 0.1}, Coefficient{15, 5},
                                    {0.22, 0.08}, {10, 3}));
  // WiMAX; the key-loss cells for MPEG-2 and WMV9 are not published.
  t.set(N::kWimax, C::kMpeg2, entry(4.2, 0.2, std::nullopt, std::nullopt, {0.2, 0.1}, {15, 0.5}));
  t.set(N::kWimax, C::kMpeg4Divx, entry(4.7, 0.2, Coefficient{0.5, 0.3}, Coefficient{30, 1},
                                        {0.3, 0.1}, {15, 0.5}));
  t.set(N::kWimax, C::kWmv9, entry(4.7, 0.2, std::nullopt, std::nullopt, {0.3, 0.1}, {15, 0.5}));
  return t;
}

}  // namespace

const CoefficientTable& CoefficientTable::builtin() {
  static const CoefficientTable table = make_builtin();
  return table;
}

const CoefficientEntry& CoefficientTable::at(NetworkKind network, MediaCodec codec) const {
  auto it = entries_.find({network, codec});
  if (it == entries_.end()) {
    throw Error(ErrorCode::kCoefficientAbsent,
                std::string("no entry for (") + std::string(to_string(network)) + ", " +
                    std::string(to_string(codec)) + ")");
  }
  return it->second;
}

void CoefficientTable::set(NetworkKind network, MediaCodec codec, const CoefficientEntry& e) {
  entries_[{network, codec}] = e;
}

namespace {

// alpha*p with the 0*absent == 0 rule.
double term(const std::optional<Coefficient>& c, double multiplier, const char* what,
            double* sigma_sq) {
  if (multiplier == 0.0) return 0.0;
  if (!c.has_value()) {
    throw Error(ErrorCode::kCoefficientAbsent, std::string(what) + " is not published here");
  }
  double s = multiplier * c->sigma;
  *sigma_sq += s * s;
  return c->value * multiplier;
}

struct BranchTerms {
  double loss_term;    // alpha*p
  double jitter_term;  // beta*j
  double sigma_sq;     // sigma_q^2 + (p sigma_alpha)^2 + (j sigma_beta)^2
};

BranchTerms branch_terms(const CoefficientEntry& e, double p, double j, bool key_loss) {
  BranchTerms out{0.0, 0.0, e.q_ideal.sigma * e.q_ideal.sigma};
  const auto& alpha = key_loss ? e.alpha_key : e.alpha_nokey;
  const auto& beta = key_loss ? e.beta_key : e.beta_nokey;
  const char* alpha_name = key_loss ? "alpha_key" : "alpha_nokey";
  const char* beta_name = key_loss ? "beta_key" : "beta_nokey";
  out.loss_term = term(alpha, p, alpha_name, &out.sigma_sq);
  out.jitter_term = term(beta, j, beta_name, &out.sigma_sq);
  return out;
}

}  // namespace

MosEstimate predict_mos(const CoefficientTable& table, NetworkKind network, MediaCodec codec,
                        double p, double j, bool key_loss) {
  if (!(p >= 0.0 && p <= 100.0)) {
    throw Error(ErrorCode::kOutOfRange, "loss percent must be in [0,100]");
  }
  if (!(j >= 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "jitter must be >= 0 seconds");
  }
  const CoefficientEntry& e = table.at(network, codec);
  BranchTerms t = branch_terms(e, p, j, key_loss);
  MosEstimate out;
  out.raw = e.q_ideal.value - t.loss_term - t.jitter_term;
  out.mos = std::clamp(out.raw, 1.0, 5.0);
  out.sigma = std::sqrt(t.sigma_sq);
  return out;
}

DegradationSplit degradation_split(const CoefficientTable& table, NetworkKind network,
                                   MediaCodec codec, double p, double j, bool key_loss) {
  const CoefficientEntry& e = table.at(network, codec);
  BranchTerms t = branch_terms(e, p, j, key_loss);
  double total = t.loss_term + t.jitter_term;
  if (total <= 0.0) {
    throw Error(ErrorCode::kNoDegradation, "alpha*p + beta*j is zero");
  }
  return {t.loss_term / total, t.jitter_term / total};
}

std::string_view to_string(GapRating rating) {
  switch (rating) {
    case GapRating::kGood:
      return "good";
    case GapRating::kAcceptable:
      return "acceptable";
    case GapRating::kPoor:
      return "poor";
  }
  return "?";
}

namespace {
GapRating rate(double x, double good_max, double acceptable_max) {
  if (x <= good_max) return GapRating::kGood;
  if (x <= acceptable_max) return GapRating::kAcceptable;
  return GapRating::kPoor;
}
}  // namespace

GapResult gap_classify(double loss_percent, double jitter_s, const GapThresholds& t) {
  GapResult r;
  r.loss = rate(loss_percent, t.loss_good_max, t.loss_acceptable_max);
  r.jitter = rate(jitter_s, t.jitter_good_max, t.jitter_acceptable_max);
  r.overall = std::max(r.loss, r.jitter);
  return r;
}

double degradation(const CoefficientTable& table, NetworkKind network, MediaCodec codec,
                   double p, double j, bool key_loss) {
  MosEstimate baseline = predict_mos(table, network, codec, 0.0, 0.0, false);
  MosEstimate measured = predict_mos(table, network, codec, p, j, key_loss);
  return baseline.mos - measured.mos;
}

}  // namespace kfdup
