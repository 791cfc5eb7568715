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

#include "kfdup/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "kfdup/config.hpp"
#include "kfdup/errors.hpp"
#include "kfdup/rng.hpp"

namespace kfdup {

namespace {

constexpr int kMinFrameBytes = 16;
constexpr double kVideoClockHz = 90000.0;

void validate(const StreamSpec& s) {
  if (!(s.fps > 0.0) || !(s.bitrate_bps > 0.0) || !(s.duration_s > 0.0)) {
    throw Error(ErrorCode::kSpecInvalid, "fps, bitrate and duration must be positive");
  }
  if (s.gop_size < 1) throw Error(ErrorCode::kSpecInvalid, "gop_size must be >= 1");
  if (!(s.key_byte_fraction > 0.0 && s.key_byte_fraction < 1.0)) {
    throw Error(ErrorCode::kSpecInvalid, "key_byte_fraction must lie in (0,1)");
  }
  if (s.mtu_payload < 32) throw Error(ErrorCode::kSpecInvalid, "mtu_payload must be >= 32");
  if (s.payload_type > 127) throw Error(ErrorCode::kSpecInvalid, "payload_type must be <= 127");
  if (std::llround(s.duration_s * s.fps) < 1) {
    throw Error(ErrorCode::kSpecInvalid, "duration too short for one frame");
  }
}

// Frame payload sizes for one GOP, first entry the key frame. Cumulative
// rounding keeps the GOP total exact and the key byte share within one byte
// of key_byte_fraction.
std::vector<int64_t> gop_frame_sizes(const StreamSpec& s) {
  double gop_bytes = s.bitrate_bps / 8.0 * s.gop_size / s.fps;
  std::vector<int64_t> sizes(static_cast<size_t>(s.gop_size), 0);
  if (s.gop_size == 1) {
    sizes[0] = std::llround(gop_bytes);
  } else {
    sizes[0] = std::llround(s.key_byte_fraction * gop_bytes);
    double delta_total = gop_bytes - static_cast<double>(sizes[0]);
    int64_t carried = 0;
    for (int i = 1; i < s.gop_size; ++i) {
      int64_t upto = std::llround(delta_total * i / (s.gop_size - 1));
      sizes[static_cast<size_t>(i)] = upto - carried;
      carried = upto;
    }
  }
  for (int64_t sz : sizes) {
    if (sz < kMinFrameBytes) {
      throw Error(ErrorCode::kSpecInvalid, "bitrate too low: a frame fell under " +
                                               std::to_string(kMinFrameBytes) + " bytes");
    }
  }
  return sizes;
}

// Frame headers: real start patterns so key/delta detection runs on payload
// bytes. Filler avoids 0x00 entirely, so no start code can appear by accident.
void append_frame_header(std::vector<uint8_t>& out, MediaCodec codec, bool key, int frame_in_gop,
                         uint8_t fill_byte) {
  switch (codec) {
    case MediaCodec::kMpeg2: {
      if (key) {
        // Sequence header before the picture header, as encoders emit it.
        const uint8_t seq_hdr[] = {0x00, 0x00, 0x01, 0xb3, 0x14, 0x00, 0xf0, 0x27};
        out.insert(out.end(), std::begin(seq_hdr), std::end(seq_hdr));
      }
      uint16_t tr = static_cast<uint16_t>(frame_in_gop & 0x3ff);
      uint8_t coding_type = key ? 1 : 2;
      out.push_back(0x00);
      out.push_back(0x00);
      out.push_back(0x01);
      out.push_back(0x00);
      out.push_back(static_cast<uint8_t>(tr >> 2));
      out.push_back(static_cast<uint8_t>(((tr & 0x3) << 6) | (coding_type << 3)));
      break;
    }
    case MediaCodec::kMpeg4Divx: {
      out.push_back(0x00);
      out.push_back(0x00);
      out.push_back(0x01);
      out.push_back(0xb6);
      out.push_back(static_cast<uint8_t>(((key ? 0u : 1u) << 6) | 0x2a));
      break;
    }
    case MediaCodec::kWmv9: {
      uint8_t b = fill_byte;
      if (key) {
        out.push_back(static_cast<uint8_t>(0x80 | (b & 0x7f)));
      } else {
        uint8_t low = b & 0x7f;
        out.push_back(low == 0 ? uint8_t{0x01} : low);
      }
      break;
    }
  }
}

}  // namespace

std::vector<SourcePacket> generate(const StreamSpec& spec, uint64_t seed) {
  validate(spec);
  const int64_t total_frames = std::llround(spec.duration_s * spec.fps);
  const std::vector<int64_t> sizes = gop_frame_sizes(spec);

  std::vector<SourcePacket> out;
  out.reserve(static_cast<size_t>(total_frames) * 2);
  uint16_t seq = spec.start_seq;

  for (int64_t f = 0; f < total_frames; ++f) {
    const int in_gop = static_cast<int>(f % spec.gop_size);
    const bool key = in_gop == 0;
    const int64_t frame_bytes = sizes[static_cast<size_t>(in_gop)];

    // Frame payload: header pattern, then no-zero filler bytes.
    std::vector<uint8_t> frame;
    frame.reserve(static_cast<size_t>(frame_bytes));
    uint64_t word = draw_u64(seed, Draw::kPayload, static_cast<uint64_t>(f), 0);
    append_frame_header(frame, spec.codec, key, in_gop, static_cast<uint8_t>(word));
    uint64_t word_index = 1;
    int bits = 0;
    while (frame.size() < static_cast<size_t>(frame_bytes)) {
      if (bits == 0) {
        word = draw_u64(seed, Draw::kPayload, static_cast<uint64_t>(f), word_index++);
        bits = 64;
      }
      frame.push_back(static_cast<uint8_t>(1 + (word & 0xff) % 255));
      word >>= 8;
      bits -= 8;
    }

    const int n_packets =
        static_cast<int>((frame_bytes + spec.mtu_payload - 1) / spec.mtu_payload);
    const uint32_t timestamp =
        static_cast<uint32_t>(std::llround(static_cast<double>(f) / spec.fps * kVideoClockHz));
    for (int k = 0; k < n_packets; ++k) {
      SourcePacket sp;
      sp.truth = key ? FrameKind::kKey : FrameKind::kDelta;
      sp.frame_start = k == 0;
      sp.send_time_us = static_cast<TimeMicros>(std::llround(
          (static_cast<double>(f) + static_cast<double>(k) / n_packets) / spec.fps *
          kMicrosPerSecond));
      RtpPacket& p = sp.packet;
      p.payload_type = spec.payload_type;
      p.sequence_number = seq++;
      p.timestamp = timestamp;
      p.ssrc = spec.ssrc;
      p.marker = k == n_packets - 1;
      auto begin = frame.begin() + static_cast<int64_t>(k) * spec.mtu_payload;
      auto end = k == n_packets - 1 ? frame.end() : begin + spec.mtu_payload;
      p.payload.assign(begin, end);
      out.push_back(std::move(sp));
    }
  }
  return out;
}

namespace {

struct OriginalInfo {
  TimeMicros send_us = 0;
  uint32_t payload_size = 0;
  FrameKind kind = FrameKind::kUnknown;
  bool kind_known = false;
  bool has_payload = false;
};

void check_ssrc(std::optional<uint32_t>& ssrc, const PacketRecord& r) {
  if (!ssrc) {
    ssrc = r.ssrc;
  } else if (*ssrc != r.ssrc) {
    throw Error(ErrorCode::kSsrcMismatch, "records mix ssrc " + std::to_string(*ssrc) + " and " +
                                              std::to_string(r.ssrc));
  }
}

}  // namespace

AnalyzeResult analyze_records(std::span<const PacketRecord> sent,
                              std::span<const PacketRecord> delivered,
                              const AnalysisOptions& options) {
  if (sent.empty()) throw Error(ErrorCode::kEmptySent, "sent trace has no packets");

  std::optional<uint32_t> ssrc;
  std::vector<OriginalInfo> originals;
  originals.reserve(sent.size());
  SeqUnwrapper sent_unwrap;
  int64_t transmitted = 0;
  uint64_t bytes_original = 0;
  uint64_t bytes_wire = 0;
  TimeMicros prev_time = std::numeric_limits<TimeMicros>::min();

  for (const PacketRecord& r : sent) {
    if (r.direction != PacketRecord::Direction::kSent) {
      throw Error(ErrorCode::kTraceMalformed, "sent trace contains a delivered record");
    }
    if (r.time_us < prev_time) {
      throw Error(ErrorCode::kTraceMalformed, "sent trace times are not monotone");
    }
    prev_time = r.time_us;
    check_ssrc(ssrc, r);
    auto [id, is_new] = sent_unwrap.feed(r.seq);
    ++transmitted;
    bytes_wire += kRtpFixedHeaderSize + r.payload_size;
    if (is_new) {
      if (id != static_cast<int64_t>(originals.size())) {
        throw Error(ErrorCode::kTraceMalformed, "sent trace skips sequence numbers");
      }
      OriginalInfo info;
      info.send_us = r.time_us;
      info.payload_size = r.payload_size;
      if (r.frame_kind) {
        info.kind = *r.frame_kind;
        info.kind_known = true;
      }
      info.has_payload = r.payload.has_value();
      originals.push_back(info);
      bytes_original += kRtpFixedHeaderSize + r.payload_size;
    }
  }

  // Labels: use recorded kinds; classify from payload bytes where a record
  // carries bytes but no label.
  bool need_classify = false;
  for (const OriginalInfo& o : originals) {
    if (!o.kind_known && o.has_payload) need_classify = true;
  }
  if (need_classify) {
    FrameTracker tracker(options.codec, options.classifier);
    SeqUnwrapper uw;
    for (const PacketRecord& r : sent) {
      auto [id, is_new] = uw.feed(r.seq);
      if (!is_new) continue;
      RtpPacket p;
      p.marker = r.marker;
      if (r.payload) p.payload = *r.payload;
      LabeledPacket lp = tracker.label(std::move(p));
      OriginalInfo& o = originals[static_cast<size_t>(id)];
      if (!o.kind_known) {
        o.kind = lp.kind;
        o.kind_known = true;
      }
    }
  }

  const int64_t n_sent = static_cast<int64_t>(originals.size());
  Deduplicator dedup(options.dedup_window);
  SeqUnwrapper recv_unwrap = SeqUnwrapper::anchored(sent[0].seq, 0);
  std::set<int64_t> delivered_ids;
  std::vector<TransitSample> transits;
  transits.reserve(delivered.size());
  prev_time = std::numeric_limits<TimeMicros>::min();

  for (const PacketRecord& r : delivered) {
    if (r.direction != PacketRecord::Direction::kDelivered) {
      throw Error(ErrorCode::kTraceMalformed, "delivered trace contains a sent record");
    }
    if (r.time_us < prev_time) {
      throw Error(ErrorCode::kTraceMalformed, "delivered trace times are not monotone");
    }
    prev_time = r.time_us;
    check_ssrc(ssrc, r);
    if (dedup.accept(r.seq) != DedupDecision::kKeep) continue;
    int64_t id = recv_unwrap.feed(r.seq).id;
    if (id < 0 || id >= n_sent) {
      throw Error(ErrorCode::kTraceMalformed,
                  "delivered seq " + std::to_string(r.seq) + " was never sent");
    }
    delivered_ids.insert(id);
    transits.push_back({originals[static_cast<size_t>(id)].send_us, r.time_us});
  }

  StreamStats stats;
  stats.sent_packets = n_sent;
  stats.transmitted_packets = transmitted;
  stats.delivered_packets = static_cast<int64_t>(delivered_ids.size());
  stats.duplicate_drops = static_cast<int64_t>(dedup.duplicate_drops());
  stats.stale_drops = static_cast<int64_t>(dedup.stale_drops());
  stats.loss_percent = packet_loss_percent(n_sent, stats.delivered_packets);
  stats.overhead = bytes_original > 0
                       ? (static_cast<double>(bytes_wire) - static_cast<double>(bytes_original)) /
                             static_cast<double>(bytes_original)
                       : 0.0;

  if (transits.size() >= 2) {
    JitterEstimate je = interarrival_jitter(transits);
    stats.jitter_s = je.smoothed_s;
    stats.jitter_mean_abs_s = je.mean_abs_s;
  }

  std::vector<TimeMicros> loss_events;
  std::vector<FrameKind> kinds(originals.size(), FrameKind::kUnknown);
  for (int64_t id = 0; id < n_sent; ++id) {
    kinds[static_cast<size_t>(id)] = originals[static_cast<size_t>(id)].kind;
    if (!delivered_ids.contains(id)) {
      loss_events.push_back(originals[static_cast<size_t>(id)].send_us);
    }
  }
  stats.jitter_at_error_s = jitter_at_error(transits, loss_events, options.error_window_us);
  stats.key_packets_lost = key_loss_count(kinds, delivered_ids);
  stats.key_frame_loss = stats.key_packets_lost > 0;

  AnalyzeResult result;
  result.stats = stats;
  double j = options.use_mean_abs_jitter ? stats.jitter_mean_abs_s : stats.jitter_s;
  result.quality.q = predict_mos(options.table, options.network, options.codec,
                                 stats.loss_percent, j, stats.key_frame_loss);
  result.quality.q_ideal = options.table.at(options.network, options.codec).q_ideal.value;
  result.quality.delta_q = degradation(options.table, options.network, options.codec,
                                       stats.loss_percent, j, stats.key_frame_loss);
  result.quality.gap = gap_classify(stats.loss_percent, j, options.thresholds);
  try {
    result.quality.split = degradation_split(options.table, options.network, options.codec,
                                             stats.loss_percent, j, stats.key_frame_loss);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoDegradation) throw;
    result.quality.split = std::nullopt;
  }
  return result;
}

RunResult run_pipeline(const StreamSpec& spec, const ChannelProfile& profile,
                       const RunOptions& run, const AnalysisOptions& analysis) {
  std::vector<SourcePacket> src = generate(spec, run.gen_seed);

  // Classifier labels drive duplication; truth stays in the trace for audits.
  FrameTracker tracker(spec.codec, analysis.classifier);
  std::vector<LabeledPacket> labeled;
  labeled.reserve(src.size());
  for (const SourcePacket& sp : src) labeled.push_back(tracker.label(sp.packet));

  std::vector<RtpPacket> wire = duplicate_stream(labeled, run.dup);

  std::vector<SendEvent> sends;
  sends.reserve(wire.size());
  std::vector<PacketRecord> sent_records;
  sent_records.reserve(wire.size());
  SeqUnwrapper uw;
  TimeMicros last_time = 0;
  for (RtpPacket& p : wire) {
    auto [id, is_new] = uw.feed(p.sequence_number);
    const SourcePacket& origin = src[static_cast<size_t>(id)];
    // A delayed copy occupies its actual emission slot, keeping times monotone.
    TimeMicros t = is_new ? origin.send_time_us : std::max(origin.send_time_us, last_time);
    last_time = t;

    PacketRecord r;
    r.direction = PacketRecord::Direction::kSent;
    r.time_us = t;
    r.seq = p.sequence_number;
    r.marker = p.marker;
    r.payload_type = p.payload_type;
    r.ssrc = p.ssrc;
    r.payload_size = static_cast<uint32_t>(p.payload.size());
    r.frame_kind = labeled[static_cast<size_t>(id)].kind;
    if (run.keep_payloads) r.payload = p.payload;
    sent_records.push_back(std::move(r));

    sends.push_back({std::move(p), t});
  }

  TransmitOptions topt;
  topt.load_inflation = run.load_inflation;
  std::vector<ArrivalEvent> arrivals = transmit(sends, profile, topt);

  std::vector<PacketRecord> delivered_records;
  delivered_records.reserve(arrivals.size());
  for (const ArrivalEvent& a : arrivals) {
    PacketRecord r;
    r.direction = PacketRecord::Direction::kDelivered;
    r.time_us = a.arrival_time_us;
    r.seq = a.packet.sequence_number;
    r.marker = a.packet.marker;
    r.payload_type = a.packet.payload_type;
    r.ssrc = a.packet.ssrc;
    r.payload_size = static_cast<uint32_t>(a.packet.payload.size());
    delivered_records.push_back(std::move(r));
  }

  RunResult result;
  result.analysis = analyze_records(sent_records, delivered_records, analysis);
  result.sent_records = std::move(sent_records);
  result.delivered_records = std::move(delivered_records);
  return result;
}

std::vector<PacketRecord> source_records(std::span<const SourcePacket> src, bool with_payload) {
  std::vector<PacketRecord> out;
  out.reserve(src.size());
  for (const SourcePacket& sp : src) {
    PacketRecord r;
    r.direction = PacketRecord::Direction::kSent;
    r.time_us = sp.send_time_us;
    r.seq = sp.packet.sequence_number;
    r.marker = sp.packet.marker;
    r.payload_type = sp.packet.payload_type;
    r.ssrc = sp.packet.ssrc;
    r.payload_size = static_cast<uint32_t>(sp.packet.payload.size());
    r.frame_kind = sp.truth;
    if (with_payload) r.payload = sp.packet.payload;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

// Internal bridge: a record as an RtpPacket. Missing payload bytes become a
// zero placeholder of the recorded size so byte accounting stays correct.
RtpPacket record_to_packet(const PacketRecord& r) {
  RtpPacket p;
  p.marker = r.marker;
  p.payload_type = r.payload_type;
  p.sequence_number = r.seq;
  p.ssrc = r.ssrc;
  if (r.payload) {
    p.payload = *r.payload;
  } else {
    p.payload.assign(r.payload_size, 0);
  }
  return p;
}

}  // namespace

std::vector<PacketRecord> duplicate_records(std::span<const PacketRecord> sent,
                                            const DupOptions& options, MediaCodec codec,
                                            const ClassifierOptions& classifier) {
  FrameTracker tracker(codec, classifier);
  std::vector<LabeledPacket> labeled;
  std::vector<size_t> first_record;  // id -> index of first occurrence in `sent`
  SeqUnwrapper uw;
  bool prev_marker = true;  // stream start opens a frame boundary
  for (size_t i = 0; i < sent.size(); ++i) {
    const PacketRecord& r = sent[i];
    auto [id, is_new] = uw.feed(r.seq);
    (void)id;
    if (!is_new) continue;  // an already-duplicated input keeps only firsts
    bool has_payload = r.payload.has_value();
    LabeledPacket lp = tracker.label(record_to_packet(r));
    if (r.frame_kind) {
      lp.kind = *r.frame_kind;
      // Without payload bytes the start position is inferred from marker
      // boundaries: the packet after a closed frame starts the next one.
      if (!has_payload) lp.frame_start = prev_marker;
    }
    prev_marker = r.marker;
    labeled.push_back(std::move(lp));
    first_record.push_back(i);
  }

  std::vector<RtpPacket> wire = duplicate_stream(labeled, options);

  std::vector<PacketRecord> out;
  out.reserve(wire.size());
  SeqUnwrapper map_back;
  TimeMicros last_time = std::numeric_limits<TimeMicros>::min();
  for (const RtpPacket& p : wire) {
    auto [id, is_new] = map_back.feed(p.sequence_number);
    const PacketRecord& origin = sent[first_record[static_cast<size_t>(id)]];
    PacketRecord r = origin;
    r.frame_kind = labeled[static_cast<size_t>(id)].kind;
    if (!is_new) r.time_us = std::max(origin.time_us, last_time);
    last_time = r.time_us;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PacketRecord> channel_records(std::span<const PacketRecord> sent,
                                          const ChannelProfile& profile,
                                          const TransmitOptions& options) {
  std::vector<SendEvent> sends;
  sends.reserve(sent.size());
  for (const PacketRecord& r : sent) {
    if (r.direction != PacketRecord::Direction::kSent) {
      throw Error(ErrorCode::kTraceMalformed, "channel input must be a sent-side trace");
    }
    sends.push_back({record_to_packet(r), r.time_us});
  }
  std::vector<ArrivalEvent> arrivals = transmit(sends, profile, options);
  std::vector<PacketRecord> out;
  out.reserve(arrivals.size());
  for (const ArrivalEvent& a : arrivals) {
    PacketRecord r;
    r.direction = PacketRecord::Direction::kDelivered;
    r.time_us = a.arrival_time_us;
    r.seq = a.packet.sequence_number;
    r.marker = a.packet.marker;
    r.payload_type = a.packet.payload_type;
    r.ssrc = a.packet.ssrc;
    r.payload_size = static_cast<uint32_t>(a.packet.payload.size());
    out.push_back(std::move(r));
  }
  return out;
}

DedupOutcome dedup_records(std::span<const PacketRecord> arrivals, int window) {
  Deduplicator dedup(window);
  DedupOutcome out;
  out.kept.reserve(arrivals.size());
  for (const PacketRecord& r : arrivals) {
    if (dedup.accept(r.seq) == DedupDecision::kKeep) out.kept.push_back(r);
  }
  out.duplicate_drops = static_cast<int64_t>(dedup.duplicate_drops());
  out.stale_drops = static_cast<int64_t>(dedup.stale_drops());
  return out;
}

namespace {

struct Series {
  std::vector<double> values;

  void push(double v) { values.push_back(v); }
  double mean() const {
    return values.empty()
               ? 0.0
               : std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  }
  double stddev() const {
    if (values.size() < 2) return 0.0;
    double m = mean();
    double acc = 0.0;
    for (double v : values) acc += (v - m) * (v - m);
    return std::sqrt(acc / (values.size() - 1));
  }
  double se() const {
    return values.empty() ? 0.0 : stddev() / std::sqrt(static_cast<double>(values.size()));
  }
};

}  // namespace

std::pair<uint64_t, uint64_t> compare_run_seeds(uint64_t base_seed, int run_index) {
  return {draw_u64(base_seed, Draw::kGenSeed, static_cast<uint64_t>(run_index)),
          draw_u64(base_seed, Draw::kChannelSeed, static_cast<uint64_t>(run_index))};
}

CompareResult compare(const StreamSpec& spec, const ChannelProfile& profile,
                      const CompareOptions& options, const AnalysisOptions& analysis) {
  if (options.n_runs < 1) throw Error(ErrorCode::kSpecInvalid, "n_runs must be >= 1");
  constexpr std::array<DupPolicy, 3> kPolicies = {DupPolicy::kNone, DupPolicy::kKeyFrames,
                                                  DupPolicy::kAll};
  std::array<Series, 3> dq, loss, jitter, overhead;
  std::array<int, 3> key_loss_runs = {0, 0, 0};

  for (int r = 0; r < options.n_runs; ++r) {
    auto [gen_seed, chan_seed] = compare_run_seeds(options.base_seed, r);
    ChannelProfile run_profile = profile;
    run_profile.seed = chan_seed;  // matched across the three arms
    for (size_t i = 0; i < kPolicies.size(); ++i) {
      RunOptions ro;
      ro.dup = {kPolicies[i], options.scope, options.dup_gap};
      ro.load_inflation = options.load_inflation;
      ro.gen_seed = gen_seed;
      RunResult res = run_pipeline(spec, run_profile, ro, analysis);
      dq[i].push(res.analysis.quality.delta_q);
      loss[i].push(res.analysis.stats.loss_percent);
      jitter[i].push(res.analysis.stats.jitter_s);
      overhead[i].push(res.analysis.stats.overhead);
      if (res.analysis.stats.key_frame_loss) ++key_loss_runs[i];
    }
  }

  CompareResult out;
  out.n_runs = options.n_runs;
  out.base_seed = options.base_seed;
  for (size_t i = 0; i < kPolicies.size(); ++i) {
    PolicySummary& ps = out.policies[i];
    ps.policy = kPolicies[i];
    ps.mean_delta_q = dq[i].mean();
    ps.se_delta_q = dq[i].se();
    ps.mean_loss_percent = loss[i].mean();
    ps.mean_jitter_s = jitter[i].mean();
    ps.mean_overhead = overhead[i].mean();
    ps.key_loss_run_fraction = static_cast<double>(key_loss_runs[i]) / options.n_runs;
  }

  auto paired = [&](const Series& a, const Series& b) {
    Series diff;
    for (size_t k = 0; k < a.values.size(); ++k) diff.push(a.values[k] - b.values[k]);
    PairedGap g;
    g.mean = diff.mean();
    g.se = diff.se();
    g.significant = g.mean > 2.0 * g.se && g.se > 0.0;
    return g;
  };
  out.none_minus_key = paired(dq[0], dq[1]);
  out.all_minus_none = paired(dq[2], dq[0]);
  out.ordering_ok = out.none_minus_key.significant && out.all_minus_none.significant;
  return out;
}

namespace {

void kv(std::ostringstream& out, std::string_view key, std::string_view value) {
  out << key << " = " << value << "\n";
}

// String literals would otherwise decay to the bool overload.
void kv(std::ostringstream& out, std::string_view key, const char* value) {
  kv(out, key, std::string_view(value));
}

void kv(std::ostringstream& out, std::string_view key, double value) {
  kv(out, key, format_double(value));
}

void kv(std::ostringstream& out, std::string_view key, int64_t value) {
  kv(out, key, std::to_string(value));
}

void kv(std::ostringstream& out, std::string_view key, uint64_t value) {
  kv(out, key, std::to_string(value));
}

void kv(std::ostringstream& out, std::string_view key, bool value) {
  kv(out, key, value ? std::string_view("true") : std::string_view("false"));
}

}  // namespace

std::string render_run_report(const RunMeta& meta, const AnalysisOptions& options,
                              const AnalyzeResult& result) {
  std::ostringstream out;
  out << "kfdup-report 1\n";
  kv(out, "type", "run");
  kv(out, "profile", meta.profile_name);
  kv(out, "network", to_string(options.network));
  kv(out, "codec", to_string(options.codec));
  kv(out, "policy", meta.policy);
  kv(out, "scope", meta.scope);
  if (meta.seeds_known) {
    kv(out, "gen_seed", meta.gen_seed);
    kv(out, "channel_seed", meta.channel_seed);
  } else {
    kv(out, "gen_seed", "-");
    kv(out, "channel_seed", "-");
  }
  const StreamStats& s = result.stats;
  kv(out, "sent_packets", s.sent_packets);
  kv(out, "transmitted_packets", s.transmitted_packets);
  kv(out, "delivered_packets", s.delivered_packets);
  kv(out, "duplicate_drops", s.duplicate_drops);
  kv(out, "stale_drops", s.stale_drops);
  kv(out, "loss_percent", s.loss_percent);
  kv(out, "jitter_s", s.jitter_s);
  kv(out, "jitter_mean_abs_s", s.jitter_mean_abs_s);
  if (s.jitter_at_error_s) {
    kv(out, "jitter_at_error_s", *s.jitter_at_error_s);
  } else {
    kv(out, "jitter_at_error_s", "-");
  }
  kv(out, "key_packets_lost", s.key_packets_lost);
  kv(out, "key_frame_loss", s.key_frame_loss);
  kv(out, "overhead", s.overhead);
  const QualitySummary& q = result.quality;
  kv(out, "q_ideal", q.q_ideal);
  kv(out, "q_raw", q.q.raw);
  kv(out, "q_mos", q.q.mos);
  kv(out, "q_sigma", q.q.sigma);
  kv(out, "delta_q", q.delta_q);
  kv(out, "gap_loss", to_string(q.gap.loss));
  kv(out, "gap_jitter", to_string(q.gap.jitter));
  kv(out, "gap_overall", to_string(q.gap.overall));
  if (q.split) {
    kv(out, "loss_share", q.split->loss_share);
    kv(out, "jitter_share", q.split->jitter_share);
  } else {
    kv(out, "loss_share", "-");
    kv(out, "jitter_share", "-");
  }
  return out.str();
}

std::string render_compare_report(const StreamSpec& spec, const ChannelProfile& profile,
                                  const CompareOptions& options, const AnalysisOptions& analysis,
                                  const CompareResult& result) {
  std::ostringstream out;
  out << "kfdup-report 1\n";
  kv(out, "type", "compare");
  kv(out, "profile", profile.name);
  kv(out, "network", to_string(analysis.network));
  kv(out, "codec", to_string(analysis.codec));
  kv(out, "duration_s", spec.duration_s);
  kv(out, "n_runs", static_cast<int64_t>(result.n_runs));
  kv(out, "base_seed", result.base_seed);
  kv(out, "scope", to_string(options.scope));
  kv(out, "dup_gap", static_cast<int64_t>(options.dup_gap));
  kv(out, "load_inflation", options.load_inflation);
  for (const PolicySummary& ps : result.policies) {
    std::string prefix(to_string(ps.policy));
    kv(out, prefix + ".mean_delta_q", ps.mean_delta_q);
    kv(out, prefix + ".se_delta_q", ps.se_delta_q);
    kv(out, prefix + ".mean_loss_percent", ps.mean_loss_percent);
    kv(out, prefix + ".mean_jitter_s", ps.mean_jitter_s);
    kv(out, prefix + ".mean_overhead", ps.mean_overhead);
    kv(out, prefix + ".key_loss_run_fraction", ps.key_loss_run_fraction);
  }
  kv(out, "gap_none_minus_key.mean", result.none_minus_key.mean);
  kv(out, "gap_none_minus_key.se", result.none_minus_key.se);
  kv(out, "gap_none_minus_key.significant", result.none_minus_key.significant);
  kv(out, "gap_all_minus_none.mean", result.all_minus_none.mean);
  kv(out, "gap_all_minus_none.se", result.all_minus_none.se);
  kv(out, "gap_all_minus_none.significant", result.all_minus_none.significant);

  std::array<std::pair<double, std::string_view>, 3> order = {
      std::pair{result.policies[0].mean_delta_q, to_string(DupPolicy::kNone)},
      std::pair{result.policies[1].mean_delta_q, to_string(DupPolicy::kKeyFrames)},
      std::pair{result.policies[2].mean_delta_q, to_string(DupPolicy::kAll)}};
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string ordering = std::string(order[0].second) + "<" + std::string(order[1].second) + "<" +
                         std::string(order[2].second);
  kv(out, "ordering", ordering);
  kv(out, "ordering_ok", result.ordering_ok);
  return out.str();
}

}  // namespace kfdup
