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

#ifndef KFDUP_CONFIG_HPP_
#define KFDUP_CONFIG_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "kfdup/netem.hpp"
#include "kfdup/quality.hpp"

namespace kfdup {

// Key-value text config: `key = value` lines, '#' comments, and a mandatory
// leading `version = 1`. One file may override any mix of channel profile,
// coefficient table cells, and GAP thresholds.
//
//   version = 1
//   profile.name = lab_wifi
//   profile.network = wifi
//   profile.loss.model = gilbert_elliott
//   profile.loss.p_good_to_bad = 0.0340909
//   ...
//   table.wifi.divx.alpha_key = 0.25 0.05      # value sigma; `-` clears
//   thresholds.loss_good_max = 0.5
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(std::string_view text, const std::string& origin = "<text>");

  bool has(const std::string& key) const { return values_.contains(key); }
  std::optional<std::string> get(const std::string& key) const;
  double get_double(const std::string& key) const;
  uint64_t get_u64(const std::string& key) const;

  // Builds a profile starting from `base` (usually a preset or defaults) and
  // applying every profile.* key present.
  ChannelProfile apply_profile(ChannelProfile base) const;

  // Applies table.<network>.<codec>.<coef> overrides onto `base`.
  CoefficientTable apply_table(CoefficientTable base) const;

  GapThresholds apply_thresholds(GapThresholds base) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

// Serializes a profile in the config syntax (round-trips via apply_profile).
std::string profile_to_config(const ChannelProfile& profile);
std::string table_to_config(const CoefficientTable& table);

// Shortest round-trip decimal for a double (plain `to_chars`); the one way
// doubles are ever printed, so emitted files are byte-deterministic.
std::string format_double(double value);

}  // namespace kfdup

#endif  // KFDUP_CONFIG_HPP_
