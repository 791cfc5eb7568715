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

#ifndef KFDUP_PIPELINE_HPP_
#define KFDUP_PIPELINE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kfdup/dedup.hpp"
#include "kfdup/dup.hpp"
#include "kfdup/keyframe.hpp"
#include "kfdup/metrics.hpp"
#include "kfdup/netem.hpp"
#include "kfdup/quality.hpp"
#include "kfdup/trace.hpp"
#include "kfdup/types.hpp"

namespace kfdup {

// Synthetic source standing in for the encoded test clip. Frames are sized so
// key bytes take key_byte_fraction of the payload volume, and every frame
// begins with its codec's genuine start pattern so the classifier works for
// real, not from side-channel labels.
struct StreamSpec {
  MediaCodec codec = MediaCodec::kMpeg4Divx;
  double fps = 24.0;
  double bitrate_bps = 256000.0;
  double duration_s = 30.0;
  int gop_size = 24;  // one key frame per second at the defaults
  double key_byte_fraction = 0.07;
  int mtu_payload = 1400;
  uint32_t ssrc = 0x6b666475;  // "kfdu"
  uint16_t start_seq = 0;
  uint8_t payload_type = 96;
};

struct SourcePacket {
  RtpPacket packet;
  FrameKind truth = FrameKind::kUnknown;
  bool frame_start = false;
  TimeMicros send_time_us = 0;
};

// Deterministic per (spec, seed). Throws Error{SpecInvalid}.
std::vector<SourcePacket> generate(const StreamSpec& spec, uint64_t seed);

struct AnalysisOptions {
  NetworkKind network = NetworkKind::kWifi;
  MediaCodec codec = MediaCodec::kMpeg4Divx;
  CoefficientTable table = CoefficientTable::builtin();
  GapThresholds thresholds{};
  ClassifierOptions classifier{};
  int dedup_window = kDefaultDedupWindow;
  TimeMicros error_window_us = kDefaultErrorWindowUs;
  // Headline j fed to the quality model: smoothed estimator by default,
  // mean |transit delta| when set.
  bool use_mean_abs_jitter = false;
};

struct QualitySummary {
  double q_ideal = 0.0;
  MosEstimate q;
  double delta_q = 0.0;
  GapResult gap;
  std::optional<DegradationSplit> split;  // absent when there is no impairment
};

struct AnalyzeResult {
  StreamStats stats;
  QualitySummary quality;
};

// The one analysis path: receiver-side dedup over the arrival stream, metrics
// on original packet identities, then the quality model. Both run_pipeline
// and the analyze CLI call this, so re-analyzing written traces reproduces a
// run's stats exactly. Throws Error{TraceMalformed, SsrcMismatch, EmptySent}.
AnalyzeResult analyze_records(std::span<const PacketRecord> sent,
                              std::span<const PacketRecord> delivered,
                              const AnalysisOptions& options);

struct RunOptions {
  DupOptions dup;
  bool load_inflation = true;
  uint64_t gen_seed = 1;
  bool keep_payloads = false;  // embed payload bytes in the sent records
};

struct RunResult {
  AnalyzeResult analysis;
  std::vector<PacketRecord> sent_records;       // post-duplication, sender clock
  std::vector<PacketRecord> delivered_records;  // post-channel arrivals, pre-dedup
};

// generate -> annotate -> duplicate -> transmit -> analyze. The channel seed
// is profile.seed; analysis.network should normally match profile.network.
RunResult run_pipeline(const StreamSpec& spec, const ChannelProfile& profile,
                       const RunOptions& run, const AnalysisOptions& analysis);

struct PolicySummary {
  DupPolicy policy = DupPolicy::kNone;
  double mean_delta_q = 0.0;
  double se_delta_q = 0.0;
  double mean_loss_percent = 0.0;
  double mean_jitter_s = 0.0;
  double mean_overhead = 0.0;
  double key_loss_run_fraction = 0.0;  // runs that lost >= 1 key packet
};

struct PairedGap {
  double mean = 0.0;  // mean per-run difference in delta Q
  double se = 0.0;    // standard error of that difference
  bool significant = false;
};

struct CompareResult {
  int n_runs = 0;
  uint64_t base_seed = 0;
  std::array<PolicySummary, 3> policies;  // none, key, all
  PairedGap none_minus_key;
  PairedGap all_minus_none;
  bool ordering_ok = false;  // mean dQ(key) < dQ(none) < dQ(all), both gaps significant
};

struct CompareOptions {
  int n_runs = 100;
  uint64_t base_seed = 1;
  DupScope scope = DupScope::kWholeFrame;
  int dup_gap = 0;
  bool load_inflation = true;
};

// Runs the three duplication policies over matched channel seeds per run
// index (paired-seed coupling) and summarizes quality degradation.
CompareResult compare(const StreamSpec& spec, const ChannelProfile& profile,
                      const CompareOptions& options, const AnalysisOptions& analysis);

// Seeds used for run r of a compare invocation (generation, channel).
std::pair<uint64_t, uint64_t> compare_run_seeds(uint64_t base_seed, int run_index);

// Record-level stage helpers backing the CLI so streams can move between
// processes as trace files.
std::vector<PacketRecord> source_records(std::span<const SourcePacket> src, bool with_payload);

// Duplicates a sent-side trace. Labels come from the records when present,
// else from classifying payload bytes; records with neither stay UNKNOWN and
// are never duplicated under the key-frames policy.
std::vector<PacketRecord> duplicate_records(std::span<const PacketRecord> sent,
                                            const DupOptions& options, MediaCodec codec,
                                            const ClassifierOptions& classifier = {});

// Runs a sent-side trace through the channel; returns the arrival trace.
// Receiver-side records are size-only (payload bytes stay in the sent trace).
std::vector<PacketRecord> channel_records(std::span<const PacketRecord> sent,
                                          const ChannelProfile& profile,
                                          const TransmitOptions& options = {});

struct DedupOutcome {
  std::vector<PacketRecord> kept;
  int64_t duplicate_drops = 0;
  int64_t stale_drops = 0;
};

// Receiver-side duplicate suppression over an arrival trace.
DedupOutcome dedup_records(std::span<const PacketRecord> arrivals,
                           int window = kDefaultDedupWindow);

// Report rendering: `kfdup-report 1` header, stable key order, one
// `key = value` per line. Byte-deterministic for identical inputs.
struct RunMeta {
  std::string profile_name;
  std::string policy = "-";
  std::string scope = "-";
  uint64_t gen_seed = 0;
  uint64_t channel_seed = 0;
  bool seeds_known = false;
};

std::string render_run_report(const RunMeta& meta, const AnalysisOptions& options,
                              const AnalyzeResult& result);
std::string render_compare_report(const StreamSpec& spec, const ChannelProfile& profile,
                                  const CompareOptions& options, const AnalysisOptions& analysis,
                                  const CompareResult& result);

}  // namespace kfdup

#endif  // KFDUP_PIPELINE_HPP_
