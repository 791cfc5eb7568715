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

#include "kfdup/netem.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "kfdup/errors.hpp"
#include "kfdup/rng.hpp"

namespace kfdup {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kFieldOutOfRange, std::string(what) + " must be in [0,1]");
  }
}

}  // namespace

double gilbert_elliott_stationary_loss(const GilbertElliottLoss& m) {
  if (!(m.p_good_to_bad > 0.0 && m.p_good_to_bad < 1.0) ||
      !(m.p_bad_to_good > 0.0 && m.p_bad_to_good < 1.0)) {
    throw Error(ErrorCode::kDegenerateChain, "transition probabilities must lie in (0,1)");
  }
  check_unit_interval(m.loss_in_good, "loss_in_good");
  check_unit_interval(m.loss_in_bad, "loss_in_bad");
  double pi_bad = m.p_good_to_bad / (m.p_good_to_bad + m.p_bad_to_good);
  return (1.0 - pi_bad) * m.loss_in_good + pi_bad * m.loss_in_bad;
}

double stationary_loss(const LossModel& model) {
  if (const auto* b = std::get_if<BernoulliLoss>(&model)) {
    check_unit_interval(b->p_loss, "p_loss");
    return b->p_loss;
  }
  return gilbert_elliott_stationary_loss(std::get<GilbertElliottLoss>(model));
}

GilbertElliottLoss solve_gilbert_elliott(double target_loss, double loss_in_good,
                                         double loss_in_bad, double p_bad_to_good) {
  check_unit_interval(target_loss, "target_loss");
  check_unit_interval(loss_in_good, "loss_in_good");
  check_unit_interval(loss_in_bad, "loss_in_bad");
  double span = loss_in_bad - loss_in_good;
  if (span == 0.0) {
    throw Error(ErrorCode::kDegenerateChain, "loss_in_bad == loss_in_good, target unreachable");
  }
  double pi_bad = (target_loss - loss_in_good) / span;
  if (!(pi_bad > 0.0 && pi_bad < 1.0)) {
    throw Error(ErrorCode::kDegenerateChain, "target loss outside the chain's reachable range");
  }
  GilbertElliottLoss out;
  out.loss_in_good = loss_in_good;
  out.loss_in_bad = loss_in_bad;
  out.p_bad_to_good = p_bad_to_good;
  out.p_good_to_bad = p_bad_to_good * pi_bad / (1.0 - pi_bad);
  if (!(out.p_good_to_bad > 0.0 && out.p_good_to_bad < 1.0)) {
    throw Error(ErrorCode::kDegenerateChain, "solved p_good_to_bad is degenerate");
  }
  return out;
}

ChannelProfile preset_profile(std::string_view name) {
  ChannelProfile p;
  p.name = std::string(name);
  if (name == "wifi") {
    p.network = NetworkKind::kWifi;
    p.loss = solve_gilbert_elliott(0.06, 0.0, 0.5, 0.25);
    p.delay = {0.100, 0.020 * kJitterStdPerMeanAbs};
    p.capacity_bps = 54e6;
  } else if (name == "threeg") {
    p.network = NetworkKind::kThreeG;
    p.loss = BernoulliLoss{0.10};
    p.delay = {0.150, 0.035 * kJitterStdPerMeanAbs};
    p.capacity_bps = 384e3;
  } else if (name == "wimax_mobile") {
    p.network = NetworkKind::kWimax;
    p.loss = BernoulliLoss{0.002};
    p.delay = {0.050, 0.015 * kJitterStdPerMeanAbs};
    p.capacity_bps = 2e6;
  } else if (name == "wimax_strong_signal") {
    p.network = NetworkKind::kWimax;
    p.loss = BernoulliLoss{0.002};
    p.delay = {0.050, 0.004 * kJitterStdPerMeanAbs};
    p.capacity_bps = 4e6;
  } else if (name == "wimax_weak_signal") {
    p.network = NetworkKind::kWimax;
    p.loss = BernoulliLoss{0.002};
    p.delay = {0.150, 0.031 * kJitterStdPerMeanAbs};
    p.capacity_bps = 400e3;
  } else if (name == "lossless") {
    p.network = NetworkKind::kWimax;
    p.loss = BernoulliLoss{0.0};
    p.delay = {0.050, 0.0};
    p.capacity_bps = 100e6;
  } else {
    throw Error(ErrorCode::kUnknownPreset, "no channel preset named '" + std::string(name) + "'");
  }
  return p;
}

std::vector<std::string> preset_names() {
  return {"wifi", "threeg", "wimax_mobile", "wimax_strong_signal", "wimax_weak_signal",
          "lossless"};
}

double effective_loss(const ChannelProfile& profile, double offered_rate_bps) {
  if (!(offered_rate_bps > 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "offered rate must be positive");
  }
  double factor = std::pow(offered_rate_bps / profile.reference_rate_bps, profile.load_exponent);
  return clamp01(stationary_loss(profile.loss) * factor);
}

double offered_rate_bps(std::span<const SendEvent> sends) {
  if (sends.empty()) return 0.0;
  uint64_t bytes = 0;
  for (const SendEvent& s : sends) bytes += s.packet.serialized_size();
  double span_s = to_seconds(sends.back().send_time_us - sends.front().send_time_us);
  if (span_s <= 0.0) return 0.0;
  return static_cast<double>(bytes) * 8.0 / span_s;
}

namespace {

struct LossPlan {
  bool gilbert = false;
  // Bernoulli: drop iff u < p_effective.
  double p_effective = 0.0;
  // Gilbert-Elliott: per-state loss (possibly deflated), plus an independent
  // thinning layer that models congestion drops on top of channel bursts.
  GilbertElliottLoss ge;
  double state_scale = 1.0;
  double p_thin = 0.0;
  double pi_bad = 0.0;
};

LossPlan make_plan(const ChannelProfile& profile, double factor) {
  LossPlan plan;
  if (const auto* b = std::get_if<BernoulliLoss>(&profile.loss)) {
    check_unit_interval(b->p_loss, "p_loss");
    plan.p_effective = clamp01(b->p_loss * factor);
    return plan;
  }
  plan.gilbert = true;
  plan.ge = std::get<GilbertElliottLoss>(profile.loss);
  double base = gilbert_elliott_stationary_loss(plan.ge);
  plan.pi_bad = plan.ge.p_good_to_bad / (plan.ge.p_good_to_bad + plan.ge.p_bad_to_good);
  if (factor <= 1.0) {
    plan.state_scale = factor;
  } else {
    // Scaling the per-state losses would clamp loss_in_bad at 1 and cap the
    // achievable stationary loss; thinning survivors hits the target exactly
    // while keeping the burst structure.
    double target = clamp01(base * factor);
    plan.p_thin = base < 1.0 ? (target - base) / (1.0 - base) : 0.0;
  }
  return plan;
}

struct IdState {
  bool in_bad = false;
  uint32_t copies = 0;
};

}  // namespace

std::vector<ArrivalEvent> transmit(std::span<const SendEvent> sends, const ChannelProfile& profile,
                                   const TransmitOptions& options) {
  std::vector<ArrivalEvent> out;
  if (sends.empty()) return out;
  if (profile.load_exponent < 1.0) {
    throw Error(ErrorCode::kFieldOutOfRange, "load_exponent must be >= 1");
  }

  double factor = 1.0;
  if (options.load_inflation) {
    double rate = options.offered_rate_bps >= 0.0 ? options.offered_rate_bps
                                                  : offered_rate_bps(sends);
    factor = rate > 0.0
                 ? std::pow(rate / profile.reference_rate_bps, profile.load_exponent)
                 : 1.0;
  }
  const LossPlan plan = make_plan(profile, factor);
  const uint64_t seed = profile.seed;
  const DelayModel& delay = profile.delay;

  SeqUnwrapper unwrap;
  int64_t chain_id = -1;  // highest unwrapped id whose macro state is current
  bool chain_in_bad = false;
  std::unordered_map<int64_t, IdState> recent;
  int64_t last_prune = 0;
  constexpr int64_t kRecentSpan = 4096;

  out.reserve(sends.size());
  for (const SendEvent& send : sends) {
    auto [id, is_new] = unwrap.feed(send.packet.sequence_number);

    uint32_t copy = 0;
    bool in_bad = false;
    if (is_new) {
      if (plan.gilbert) {
        if (chain_id < 0) {
          chain_in_bad = draw_unit(seed, Draw::kInitState, 0) < plan.pi_bad;
          chain_id = 0;
        }
        // Advance the macro chain one transition per elapsed original slot.
        for (int64_t step = chain_id + 1; step <= id; ++step) {
          double u = draw_unit(seed, Draw::kTransition, static_cast<uint64_t>(step));
          chain_in_bad = chain_in_bad ? !(u < plan.ge.p_bad_to_good) : (u < plan.ge.p_good_to_bad);
        }
        chain_id = id;
        in_bad = chain_in_bad;
      }
      recent[id] = {chain_in_bad, 1};
      if (id - last_prune > kRecentSpan) {
        std::erase_if(recent, [&](const auto& kv) { return kv.first < id - kRecentSpan; });
        last_prune = id;
      }
    } else {
      auto it = recent.find(id);
      if (it == recent.end()) {
        it = recent.emplace(id, IdState{chain_in_bad, 1}).first;
      }
      copy = it->second.copies++;
      if (plan.gilbert) {
        // A copy experiences the burst state of the slot it actually occupies
        // (the chain has advanced past any originals sent since), plus one
        // micro-step of its own. Adjacent copies therefore share their
        // original's burst; spaced copies (dup-gap) decorrelate naturally.
        double u = draw_unit(seed, Draw::kMicroStep, static_cast<uint64_t>(id), copy);
        in_bad = chain_in_bad ? !(u < plan.ge.p_bad_to_good) : (u < plan.ge.p_good_to_bad);
      }
    }

    const uint64_t uid = static_cast<uint64_t>(id);
    bool lost;
    if (plan.gilbert) {
      double p_state = (in_bad ? plan.ge.loss_in_bad : plan.ge.loss_in_good) * plan.state_scale;
      lost = draw_unit(seed, Draw::kLoss, uid, copy) < p_state;
      if (!lost && plan.p_thin > 0.0) {
        lost = draw_unit(seed, Draw::kThin, uid, copy) < plan.p_thin;
      }
    } else {
      lost = draw_unit(seed, Draw::kLoss, uid, copy) < plan.p_effective;
    }
    if (lost) continue;

    double delay_s = delay.base_delay_s;
    if (delay.jitter_std_s > 0.0) {
      delay_s += delay.jitter_std_s * draw_gauss(seed, uid, copy);
      if (delay_s < 0.0) delay_s = 0.0;  // perturbation truncated at -base_delay
    }
    ArrivalEvent ev;
    ev.packet = send.packet;
    ev.send_time_us = send.send_time_us;
    ev.arrival_time_us = send.send_time_us + static_cast<TimeMicros>(std::llround(delay_s * kMicrosPerSecond));
    out.push_back(std::move(ev));
  }

  std::stable_sort(out.begin(), out.end(), [](const ArrivalEvent& a, const ArrivalEvent& b) {
    return a.arrival_time_us < b.arrival_time_us;
  });
  return out;
}

}  // namespace kfdup
