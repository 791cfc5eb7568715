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

#include "kfdup/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "kfdup/errors.hpp"

namespace kfdup {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kConfigMalformed, what + ": bad number '" + std::string(text) + "'");
  }
  return v;
}

uint64_t parse_u64(std::string_view text, const std::string& what) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kConfigMalformed, what + ": bad integer '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_text(text.str(), path);
}

Config Config::parse_text(std::string_view text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  size_t pos = 0;
  int line_no = 0;
  bool version_seen = false;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigMalformed,
                  origin + ":" + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw Error(ErrorCode::kConfigMalformed,
                  origin + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!version_seen) {
      if (key != "version") {
        throw Error(ErrorCode::kConfigMalformed,
                    origin + ": first entry must be `version = 1`");
      }
      if (value != "1") {
        throw Error(ErrorCode::kConfigMalformed, origin + ": unsupported version " + value);
      }
      version_seen = true;
      continue;
    }
    cfg.values_[key] = value;
  }
  if (!version_seen) {
    throw Error(ErrorCode::kConfigMalformed, origin + ": missing `version = 1` header");
  }
  return cfg;
}

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double Config::get_double(const std::string& key) const {
  auto v = get(key);
  if (!v) throw Error(ErrorCode::kConfigMalformed, "missing key '" + key + "'");
  return parse_double(*v, key);
}

uint64_t Config::get_u64(const std::string& key) const {
  auto v = get(key);
  if (!v) throw Error(ErrorCode::kConfigMalformed, "missing key '" + key + "'");
  return parse_u64(*v, key);
}

ChannelProfile Config::apply_profile(ChannelProfile p) const {
  if (auto v = get("profile.preset")) p = preset_profile(*v);
  if (auto v = get("profile.name")) p.name = *v;
  if (auto v = get("profile.network")) p.network = network_from_string(*v);
  if (auto v = get("profile.loss.model")) {
    if (*v == "bernoulli") {
      p.loss = BernoulliLoss{};
    } else if (*v == "gilbert_elliott") {
      p.loss = GilbertElliottLoss{};
    } else {
      throw Error(ErrorCode::kConfigMalformed, "profile.loss.model must be bernoulli or gilbert_elliott");
    }
  }
  if (auto v = get("profile.loss.p")) {
    auto* b = std::get_if<BernoulliLoss>(&p.loss);
    if (!b) throw Error(ErrorCode::kConfigMalformed, "profile.loss.p needs a bernoulli model");
    b->p_loss = parse_double(*v, "profile.loss.p");
  }
  if (auto* ge = std::get_if<GilbertElliottLoss>(&p.loss)) {
    if (auto v = get("profile.loss.p_good_to_bad"))
      ge->p_good_to_bad = parse_double(*v, "profile.loss.p_good_to_bad");
    if (auto v = get("profile.loss.p_bad_to_good"))
      ge->p_bad_to_good = parse_double(*v, "profile.loss.p_bad_to_good");
    if (auto v = get("profile.loss.loss_in_good"))
      ge->loss_in_good = parse_double(*v, "profile.loss.loss_in_good");
    if (auto v = get("profile.loss.loss_in_bad"))
      ge->loss_in_bad = parse_double(*v, "profile.loss.loss_in_bad");
    if (auto v = get("profile.loss.target")) {
      *ge = solve_gilbert_elliott(parse_double(*v, "profile.loss.target"), ge->loss_in_good,
                                  ge->loss_in_bad, ge->p_bad_to_good);
    }
  }
  if (auto v = get("profile.delay.base_s")) p.delay.base_delay_s = parse_double(*v, "profile.delay.base_s");
  if (auto v = get("profile.delay.jitter_std_s"))
    p.delay.jitter_std_s = parse_double(*v, "profile.delay.jitter_std_s");
  if (auto v = get("profile.capacity_bps")) p.capacity_bps = parse_double(*v, "profile.capacity_bps");
  if (auto v = get("profile.load_exponent")) p.load_exponent = parse_double(*v, "profile.load_exponent");
  if (auto v = get("profile.reference_rate_bps"))
    p.reference_rate_bps = parse_double(*v, "profile.reference_rate_bps");
  if (auto v = get("profile.seed")) p.seed = parse_u64(*v, "profile.seed");
  return p;
}

namespace {

std::optional<Coefficient> parse_coefficient(std::string_view text, const std::string& key) {
  text = trim(text);
  if (text == "-") return std::nullopt;
  size_t space = text.find(' ');
  Coefficient c;
  if (space == std::string_view::npos) {
    c.value = parse_double(text, key);
  } else {
    c.value = parse_double(trim(text.substr(0, space)), key);
    c.sigma = parse_double(trim(text.substr(space + 1)), key);
  }
  return c;
}

}  // namespace

CoefficientTable Config::apply_table(CoefficientTable table) const {
  static constexpr NetworkKind kNetworks[] = {NetworkKind::kWifi, NetworkKind::kThreeG,
                                              NetworkKind::kWimax};
  static constexpr MediaCodec kCodecs[] = {MediaCodec::kMpeg2, MediaCodec::kMpeg4Divx,
                                           MediaCodec::kWmv9};
  for (NetworkKind n : kNetworks) {
    for (MediaCodec c : kCodecs) {
      std::string prefix =
          "table." + std::string(to_string(n)) + "." + std::string(to_string(c)) + ".";
      CoefficientEntry e = table.at(n, c);
      bool touched = false;
      auto field = [&](const char* name, auto setter) {
        if (auto v = get(prefix + name)) {
          setter(parse_coefficient(*v, prefix + name));
          touched = true;
        }
      };
      field("q_ideal", [&](std::optional<Coefficient> v) {
        if (!v) throw Error(ErrorCode::kConfigMalformed, prefix + "q_ideal cannot be absent");
        e.q_ideal = *v;
      });
      field("alpha_key", [&](std::optional<Coefficient> v) { e.alpha_key = v; });
      field("beta_key", [&](std::optional<Coefficient> v) { e.beta_key = v; });
      field("alpha_nokey", [&](std::optional<Coefficient> v) { e.alpha_nokey = v; });
      field("beta_nokey", [&](std::optional<Coefficient> v) { e.beta_nokey = v; });
      if (touched) table.set(n, c, e);
    }
  }
  return table;
}

GapThresholds Config::apply_thresholds(GapThresholds t) const {
  if (auto v = get("thresholds.loss_good_max")) t.loss_good_max = parse_double(*v, "thresholds.loss_good_max");
  if (auto v = get("thresholds.loss_acceptable_max"))
    t.loss_acceptable_max = parse_double(*v, "thresholds.loss_acceptable_max");
  if (auto v = get("thresholds.jitter_good_max"))
    t.jitter_good_max = parse_double(*v, "thresholds.jitter_good_max");
  if (auto v = get("thresholds.jitter_acceptable_max"))
    t.jitter_acceptable_max = parse_double(*v, "thresholds.jitter_acceptable_max");
  if (t.loss_good_max >= t.loss_acceptable_max || t.jitter_good_max >= t.jitter_acceptable_max) {
    throw Error(ErrorCode::kConfigMalformed, "GAP thresholds must satisfy good_max < acceptable_max");
  }
  return t;
}

std::string profile_to_config(const ChannelProfile& p) {
  std::ostringstream out;
  out << "version = 1\n";
  out << "profile.name = " << p.name << "\n";
  out << "profile.network = " << to_string(p.network) << "\n";
  if (const auto* b = std::get_if<BernoulliLoss>(&p.loss)) {
    out << "profile.loss.model = bernoulli\n";
    out << "profile.loss.p = " << format_double(b->p_loss) << "\n";
  } else {
    const auto& ge = std::get<GilbertElliottLoss>(p.loss);
    out << "profile.loss.model = gilbert_elliott\n";
    out << "profile.loss.p_good_to_bad = " << format_double(ge.p_good_to_bad) << "\n";
    out << "profile.loss.p_bad_to_good = " << format_double(ge.p_bad_to_good) << "\n";
    out << "profile.loss.loss_in_good = " << format_double(ge.loss_in_good) << "\n";
    out << "profile.loss.loss_in_bad = " << format_double(ge.loss_in_bad) << "\n";
  }
  out << "profile.delay.base_s = " << format_double(p.delay.base_delay_s) << "\n";
  out << "profile.delay.jitter_std_s = " << format_double(p.delay.jitter_std_s) << "\n";
  out << "profile.capacity_bps = " << format_double(p.capacity_bps) << "\n";
  out << "profile.load_exponent = " << format_double(p.load_exponent) << "\n";
  out << "profile.reference_rate_bps = " << format_double(p.reference_rate_bps) << "\n";
  out << "profile.seed = " << p.seed << "\n";
  return out.str();
}

std::string table_to_config(const CoefficientTable& table) {
  std::ostringstream out;
  out << "version = 1\n";
  auto coef = [](const std::optional<Coefficient>& c) {
    if (!c) return std::string("-");
    return format_double(c->value) + " " + format_double(c->sigma);
  };
  for (const auto& [key, e] : table.entries()) {
    std::string prefix =
        "table." + std::string(to_string(key.first)) + "." + std::string(to_string(key.second)) + ".";
    out << prefix << "q_ideal = " << coef(e.q_ideal) << "\n";
    out << prefix << "alpha_key = " << coef(e.alpha_key) << "\n";
    out << prefix << "beta_key = " << coef(e.beta_key) << "\n";
    out << prefix << "alpha_nokey = " << coef(e.alpha_nokey) << "\n";
    out << prefix << "beta_nokey = " << coef(e.beta_nokey) << "\n";
  }
  return out.str();
}

}  // namespace kfdup
