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

#ifndef KFDUP_NETEM_HPP_
#define KFDUP_NETEM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kfdup/rtp.hpp"
#include "kfdup/types.hpp"

namespace kfdup {

struct BernoulliLoss {
  double p_loss = 0.0;  // [0,1]
};

// Two-state Markov burst-loss model. 3G/WiMAX lose packets uniformly; Wi-Fi
// loses them in groups, which this realizes.
struct GilbertElliottLoss {
  double p_good_to_bad = 0.0;
  double p_bad_to_good = 0.0;
  double loss_in_good = 0.0;
  double loss_in_bad = 0.0;
};

using LossModel = std::variant<BernoulliLoss, GilbertElliottLoss>;

// Closed-form stationary loss of the chain. Throws Error{DegenerateChain}
// when a transition probability is 0 or 1.
double gilbert_elliott_stationary_loss(const GilbertElliottLoss& model);

// Stationary loss of either model.
double stationary_loss(const LossModel& model);

// Solves p_good_to_bad so the chain's stationary loss hits `target_loss`,
// keeping the other three parameters fixed. Throws Error{DegenerateChain}
// when the target is unreachable.
GilbertElliottLoss solve_gilbert_elliott(double target_loss, double loss_in_good,
                                         double loss_in_bad, double p_bad_to_good);

struct DelayModel {
  double base_delay_s = 0.0;
  // Zero-mean Gaussian perturbation, truncated at -base_delay so arrivals
  // never precede sends.
  double jitter_std_s = 0.0;
};

// Gaussian sigma that makes the mean |transit delta| statistic equal a target
// mean jitter: E|N(0,s) - N(0,s)| = 2s/sqrt(pi). Presets quote mean jitter,
// so their sigma is target * sqrt(pi)/2.
constexpr double kJitterStdPerMeanAbs = 0.886226925452758;

struct ChannelProfile {
  std::string name;
  NetworkKind network = NetworkKind::kWifi;
  LossModel loss;
  DelayModel delay;
  double capacity_bps = 0.0;
  double load_exponent = 2.0;         // kappa, >= 1
  double reference_rate_bps = 256000.0;
  uint64_t seed = 0;
};

// Presets calibrated to the GAP-scale table: wifi (bursty 6%, 20 ms),
// threeg (uniform 10%, 35 ms), wimax_mobile (uniform 0.2%, 15 ms),
// wimax_strong_signal (4 ms), wimax_weak_signal (31 ms).
ChannelProfile preset_profile(std::string_view name);
std::vector<std::string> preset_names();

// Stationary loss scaled by (offered_rate / reference_rate)^kappa, clamped to
// [0,1]. Packet loss grows faster than the offered rate; this is the emulated
// congestion law, not a measurement.
double effective_loss(const ChannelProfile& profile, double offered_rate_bps);

struct SendEvent {
  RtpPacket packet;
  TimeMicros send_time_us = 0;
};

struct ArrivalEvent {
  RtpPacket packet;
  TimeMicros send_time_us = 0;
  TimeMicros arrival_time_us = 0;
};

struct TransmitOptions {
  bool load_inflation = false;
  // When >= 0, overrides the offered rate computed from the input stream.
  double offered_rate_bps = -1.0;
};

// Pushes a sender-ordered stream through the emulated channel: drops per the
// loss model (inflated under load when enabled), delays survivors per the
// delay model, and returns them sorted by arrival time. Fully deterministic
// in (profile.seed, input).
//
// Randomness is keyed by each packet's unwrapped original index and copy
// number, never by processing order, so matched-seed runs stay coupled across
// duplication policies. Duplicate copies take adjacent steps on the burst
// chain: a burst that kills an original tends to kill its copy too.
std::vector<ArrivalEvent> transmit(std::span<const SendEvent> sends, const ChannelProfile& profile,
                                   const TransmitOptions& options = {});

// Offered rate of a send stream: serialized RTP bits over the send span.
double offered_rate_bps(std::span<const SendEvent> sends);

}  // namespace kfdup

#endif  // KFDUP_NETEM_HPP_
