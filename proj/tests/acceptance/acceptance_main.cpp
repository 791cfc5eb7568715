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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the binary exits nonzero if any fails. Expected values are computed here
// from independent closed forms or reference data, never from the library
// path under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "kfdup/errors.hpp"
#include "kfdup/pipeline.hpp"

using namespace kfdup;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using CriterionFn = std::function<Outcome()>;

struct Check {
  Outcome& out;
  void operator()(bool ok, const std::string& what) {
    if (!ok) {
      out.pass = false;
      if (!out.detail.empty()) out.detail += "; ";
      out.detail += what;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// C1: MOS-model exactness against an independently transcribed table.

struct RefEntry {
  double q, sq;
  double ak, sak, bk, sbk;  // NaN == not published
  double aw, saw, bw, sbw;
};

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

struct RefRow {
  NetworkKind net;
  MediaCodec codec;
  RefEntry e;
};

// Transcribed from the published coefficient tables, independent of
// CoefficientTable::builtin().
const RefRow kReference[] = {
    {NetworkKind::kWifi, MediaCodec::kMpeg2, {4.2, 0.2, 0.11, 0.03, 15, 4, 0.06, 0.02, 10, 4}},
    {NetworkKind::kWifi, MediaCodec::kMpeg4Divx, {4.7, 0.2, 0.25, 0.05, 15, 5, 0.17, 0.02, 10, 3}},
    {NetworkKind::kWifi, MediaCodec::kWmv9, {4.7, 0.2, 0.25, 0.11, 20, 8, 0.16, 0.6, 10, 3}},
    {NetworkKind::kThreeG, MediaCodec::kMpeg2, {4.2, 0.2, 0.12, 0.02, 10, 2, 0.06, 0.01, 5, 1}},
    {NetworkKind::kThreeG, MediaCodec::kMpeg4Divx, {4.7, 0.2, 0.22, 0.05, 13, 5, 0.12, 0.05, 8, 3}},
    {NetworkKind::kThreeG, MediaCodec::kWmv9, {4.7, 0.2, 0.32, 0.1, 15, 5, 0.22, 0.08, 10, 3}},
    {NetworkKind::kWimax, MediaCodec::kMpeg2,
     {4.2, 0.2, kAbsent, kAbsent, kAbsent, kAbsent, 0.2, 0.1, 15, 0.5}},
    {NetworkKind::kWimax, MediaCodec::kMpeg4Divx, {4.7, 0.2, 0.5, 0.3, 30, 1, 0.3, 0.1, 15, 0.5}},
    {NetworkKind::kWimax, MediaCodec::kWmv9,
     {4.7, 0.2, kAbsent, kAbsent, kAbsent, kAbsent, 0.3, 0.1, 15, 0.5}},
};

Outcome criterion1() {
  Outcome out;
  Check check{out};
  const CoefficientTable& table = CoefficientTable::builtin();
  const double points[3][2] = {{0.0, 0.0}, {10.0, 0.1}, {6.0, 0.02}};
  int exact_points = 0;
  int absent_cells = 0;
  for (const RefRow& row : kReference) {
    for (bool key_loss : {true, false}) {
      double alpha = key_loss ? row.e.ak : row.e.aw;
      double beta = key_loss ? row.e.bk : row.e.bw;
      double salpha = key_loss ? row.e.sak : row.e.saw;
      double sbeta = key_loss ? row.e.sbk : row.e.sbw;
      for (auto [p, j] : points) {
        std::string at = std::string(to_string(row.net)) + "/" +
                         std::string(to_string(row.codec)) + (key_loss ? "/key" : "/nokey") +
                         " p=" + fmt(p) + " j=" + fmt(j);
        if (std::isnan(alpha) && (p > 0.0 || j > 0.0)) {
          try {
            predict_mos(table, row.net, row.codec, p, j, key_loss);
            check(false, at + ": expected CoefficientAbsent");
          } catch (const Error& e) {
            check(e.code() == ErrorCode::kCoefficientAbsent, at + ": wrong error");
            ++absent_cells;
          }
          continue;
        }
        MosEstimate est = predict_mos(table, row.net, row.codec, p, j, key_loss);
        double expected_raw =
            std::isnan(alpha) ? row.e.q : row.e.q - alpha * p - beta * j;
        double expected_mos = std::clamp(expected_raw, 1.0, 5.0);
        check(est.raw == expected_raw, at + ": raw " + fmt(est.raw) + " != " + fmt(expected_raw));
        check(est.mos == expected_mos, at + ": mos mismatch");
        if (!std::isnan(alpha)) {
          double expected_sigma = std::sqrt(row.e.sq * row.e.sq + (p * salpha) * (p * salpha) +
                                            (j * sbeta) * (j * sbeta));
          check(est.sigma == expected_sigma, at + ": sigma mismatch");
        }
        ++exact_points;
      }
    }
  }
  if (out.pass) {
    out.detail = std::to_string(exact_points) + " points exact to double precision, " +
                 std::to_string(absent_cells) + " unpublished cells raise CoefficientAbsent";
  }
  return out;
}

// ---------------------------------------------------------------------------
// C2: GAP-scale reproduction at the three preset operating points.

Outcome criterion2() {
  Outcome out;
  Check check{out};
  struct Row {
    double p, j;
    GapRating loss, jitter, overall;
  };
  const Row rows[] = {
      {6.0, 0.020, GapRating::kPoor, GapRating::kAcceptable, GapRating::kPoor},
      {10.5, 0.035, GapRating::kPoor, GapRating::kAcceptable, GapRating::kPoor},
      {0.2, 0.015, GapRating::kGood, GapRating::kGood, GapRating::kGood},
  };
  for (const Row& row : rows) {
    GapResult r = gap_classify(row.p, row.j);
    std::string at = "(" + fmt(row.p) + "%, " + fmt(row.j) + "s)";
    check(r.loss == row.loss, at + ": loss rating");
    check(r.jitter == row.jitter, at + ": jitter rating");
    check(r.overall == row.overall, at + ": overall rating");
  }
  if (out.pass) out.detail = "all nine ratings match the published rows";
  return out;
}

// ---------------------------------------------------------------------------
// C3: key-frame duplication overhead at the default stream spec.

Outcome criterion3() {
  Outcome out;
  Check check{out};
  StreamSpec spec;  // defaults: DivX, 24 fps, 256 kbps, GOP 24, 7% key bytes
  auto src = generate(spec, 20260811);
  std::vector<RtpPacket> originals;
  for (const auto& sp : src) originals.push_back(sp.packet);
  auto labeled = annotate_stream(spec.codec, originals);
  auto wire = duplicate_stream(labeled, {DupPolicy::kKeyFrames, DupScope::kWholeFrame, 0});
  double ratio = overhead_ratio(originals, wire);
  check(std::abs(ratio - 0.07) <= 0.001,
        "overhead " + fmt(ratio) + " not within 0.07 +- 0.001");
  if (out.pass) out.detail = "overhead_ratio = " + fmt(ratio) + " (target 0.07 +- 0.001)";
  return out;
}

// ---------------------------------------------------------------------------
// C4: three-policy comparison ordering on the bursty Wi-Fi preset.

Outcome criterion4() {
  Outcome out;
  Check check{out};
  StreamSpec spec;
  spec.codec = MediaCodec::kMpeg4Divx;
  spec.duration_s = 12.0;
  ChannelProfile wifi = preset_profile("wifi");
  AnalysisOptions analysis;
  analysis.network = wifi.network;
  analysis.codec = spec.codec;
  CompareOptions copt;
  copt.n_runs = 100;
  copt.base_seed = 20260811;
  copt.dup_gap = 4;  // spaced copies; adjacency is worst-case under bursts
  copt.load_inflation = true;
  CompareResult r = compare(spec, wifi, copt, analysis);

  double dq_none = r.policies[0].mean_delta_q;
  double dq_key = r.policies[1].mean_delta_q;
  double dq_all = r.policies[2].mean_delta_q;
  check(dq_key < dq_none, "mean dQ(key) >= mean dQ(none)");
  check(dq_none < dq_all, "mean dQ(none) >= mean dQ(all)");
  check(r.none_minus_key.mean > 2.0 * r.none_minus_key.se,
        "none-key gap " + fmt(r.none_minus_key.mean) + " <= 2 SE (" +
            fmt(r.none_minus_key.se) + ")");
  check(r.all_minus_none.mean > 2.0 * r.all_minus_none.se,
        "all-none gap " + fmt(r.all_minus_none.mean) + " <= 2 SE (" +
            fmt(r.all_minus_none.se) + ")");
  if (out.pass) {
    out.detail = "mean dQ key/none/all = " + fmt(dq_key) + "/" + fmt(dq_none) + "/" +
                 fmt(dq_all) + "; gaps " + fmt(r.none_minus_key.mean / r.none_minus_key.se) +
                 " and " + fmt(r.all_minus_none.mean / r.all_minus_none.se) + " SE";
  }
  return out;
}

// ---------------------------------------------------------------------------
// C5: duplication effectiveness reaches p^2 under independent copy loss.

Outcome criterion5() {
  Outcome out;
  Check check{out};
  const int n = 100'000;
  std::string details;
  for (double p : {0.05, 0.10, 0.20}) {
    // Every original duplicated; uniform loss; copies draw independently.
    std::vector<SendEvent> sends;
    sends.reserve(2 * n);
    uint16_t seq = 0;
    for (int i = 0; i < n; ++i) {
      SendEvent ev;
      ev.packet.sequence_number = seq++;
      ev.send_time_us = i * 1000;
      sends.push_back(ev);
      sends.push_back(ev);
    }
    ChannelProfile prof;
    prof.name = "bern";
    prof.loss = BernoulliLoss{p};
    prof.delay = {0.05, 0.0};
    prof.capacity_bps = 1e9;
    prof.seed = 314159 + static_cast<uint64_t>(p * 1000);

    auto arrivals = transmit(sends, prof);
    Deduplicator dedup;
    std::unordered_set<int64_t> delivered;
    SeqUnwrapper uw;
    int64_t next_expected = 0;
    // Arrival order equals send order here (no jitter), so unwrap directly.
    for (const auto& a : arrivals) {
      if (dedup.accept(a.packet) == DedupDecision::kKeep) {
        auto r = uw.feed(a.packet.sequence_number);
        delivered.insert(r.id);
      }
    }
    (void)next_expected;
    double lost = 1.0 - static_cast<double>(delivered.size()) / n;
    double expected = p * p;
    double sigma = std::sqrt(expected * (1 - expected) / n);
    check(std::abs(lost - expected) <= 3 * sigma,
          "p=" + fmt(p) + ": post-dedup loss " + fmt(lost) + " outside " + fmt(expected) +
              " +- 3*" + fmt(sigma));
    details += (details.empty() ? "" : ", ") + fmt(lost) + " vs " + fmt(expected);
  }
  if (out.pass) out.detail = "post-dedup loss at p^2 within 3 sigma: " + details;
  return out;
}

// ---------------------------------------------------------------------------
// C6: dedup correctness.

Outcome criterion6() {
  Outcome out;
  Check check{out};

  // (a) full duplication over a lossless channel reconstructs the stream.
  StreamSpec spec;
  spec.duration_s = 5.0;
  auto src = generate(spec, 606);
  std::vector<RtpPacket> originals;
  for (const auto& sp : src) originals.push_back(sp.packet);
  auto labeled = annotate_stream(spec.codec, originals);
  auto wire = duplicate_stream(labeled, {DupPolicy::kAll, DupScope::kWholeFrame, 0});
  ChannelProfile lossless = preset_profile("lossless");
  std::vector<SendEvent> sends;
  SeqUnwrapper uw;
  for (const auto& pkt : wire) {
    auto id = uw.feed(pkt.sequence_number).id;
    sends.push_back({pkt, src[static_cast<size_t>(id)].send_time_us});
  }
  auto arrivals = transmit(sends, lossless);
  Deduplicator dedup;
  std::vector<RtpPacket> kept;
  for (const auto& a : arrivals) {
    if (dedup.accept(a.packet) == DedupDecision::kKeep) kept.push_back(a.packet);
  }
  check(kept.size() == originals.size(), "keep count != original count");
  bool bytes_equal = kept.size() == originals.size();
  for (size_t i = 0; bytes_equal && i < kept.size(); ++i) {
    bytes_equal = serialize_rtp(kept[i]) == serialize_rtp(originals[i]);
  }
  check(bytes_equal, "delivered stream not byte-equal to the original");
  check(dedup.duplicate_drops() == originals.size(),
        "duplicate_drops " + std::to_string(dedup.duplicate_drops()) + " != sent count " +
            std::to_string(originals.size()));

  // (b) jitter-only reordering: zero drops (the rule VLC's receiver violates).
  {
    std::vector<SendEvent> dense;
    uint16_t seq = 0;
    for (int i = 0; i < 20'000; ++i) {
      SendEvent ev;
      ev.packet.sequence_number = seq++;
      ev.send_time_us = i * 1000;  // 1 ms spacing << 20 ms jitter
      dense.push_back(ev);
    }
    ChannelProfile jittery;
    jittery.name = "jitter-only";
    jittery.loss = BernoulliLoss{0.0};
    jittery.delay = {0.100, 0.020};
    jittery.capacity_bps = 1e9;
    jittery.seed = 777;
    auto moved = transmit(dense, jittery);
    check(moved.size() == dense.size(), "lossless channel dropped packets");
    bool reordered = false;
    Deduplicator d2;
    int64_t drops = 0;
    for (size_t i = 0; i < moved.size(); ++i) {
      if (i > 0 && seq_forward_distance(moved[i - 1].packet.sequence_number,
                                        moved[i].packet.sequence_number) < 0) {
        reordered = true;
      }
      if (d2.accept(moved[i].packet) != DedupDecision::kKeep) ++drops;
    }
    check(reordered, "jitter produced no reordering; test not probative");
    check(drops == 0, std::to_string(drops) + " reordered packets dropped");
  }

  // (c) agreement with an unbounded-memory brute-force oracle.
  {
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 1000; ++iter) {
      const int n = 200;
      const uint16_t start = static_cast<uint16_t>(rng());
      std::vector<uint16_t> arrivals_seq;
      for (int i = 0; i < n; ++i) {
        uint16_t s = static_cast<uint16_t>(start + i);
        arrivals_seq.push_back(s);
        if (rng() % 3 == 0) arrivals_seq.push_back(s);
      }
      // Displacement-bounded shuffle, span far below the window.
      for (size_t k = 0; k + 1 < arrivals_seq.size(); ++k) {
        if (rng() % 2 == 0) std::swap(arrivals_seq[k], arrivals_seq[k + 1]);
      }
      Deduplicator d3;
      std::unordered_set<uint16_t> oracle;
      for (uint16_t s : arrivals_seq) {
        bool kept_now = d3.accept(s) == DedupDecision::kKeep;
        bool expected = oracle.insert(s).second;
        if (kept_now != expected) {
          check(false, "oracle disagreement at iteration " + std::to_string(iter));
          iter = 1000;
          break;
        }
      }
    }
  }
  if (out.pass) {
    out.detail = "full-dup reconstruction byte-exact, reordering undropped, 1000 oracle streams agree";
  }
  return out;
}

// ---------------------------------------------------------------------------
// C7: loss/jitter degradation split at the Wi-Fi operating point.

Outcome criterion7() {
  Outcome out;
  Check check{out};
  DegradationSplit split = degradation_split(CoefficientTable::builtin(), NetworkKind::kWifi,
                                             MediaCodec::kMpeg4Divx, 6.0, 0.020, true);
  double expected = (0.25 * 6.0) / (0.25 * 6.0 + 15 * 0.020);  // 1.5 / 1.8
  check(std::abs(split.loss_share - expected) <= 0.001,
        "loss share " + fmt(split.loss_share) + " != " + fmt(expected) + " +- 0.001");
  check(std::abs(split.loss_share + split.jitter_share - 1.0) < 1e-12, "shares do not sum to 1");
  if (out.pass) {
    out.detail = "loss share " + fmt(split.loss_share) + " (~80% of degradation from loss)";
  }
  return out;
}

// ---------------------------------------------------------------------------
// C8: channel statistics over 1e6 packets per preset.

struct RunStats {
  double loss_fraction;
  double mean_run_length;
  int64_t run_count;
};

RunStats channel_stats(const ChannelProfile& prof, int n) {
  std::vector<SendEvent> sends;
  sends.reserve(static_cast<size_t>(n));
  uint16_t seq = 0;
  for (int i = 0; i < n; ++i) {
    SendEvent ev;
    ev.packet.sequence_number = seq++;
    ev.send_time_us = static_cast<TimeMicros>(i) * 1000;
    sends.push_back(ev);
  }
  auto arrivals = transmit(sends, prof);
  std::vector<bool> delivered(static_cast<size_t>(n), false);
  for (const auto& a : arrivals) delivered[static_cast<size_t>(a.send_time_us / 1000)] = true;
  int64_t losses = 0;
  int64_t runs = 0;
  bool in_run = false;
  for (int i = 0; i < n; ++i) {
    if (!delivered[static_cast<size_t>(i)]) {
      ++losses;
      if (!in_run) {
        ++runs;
        in_run = true;
      }
    } else {
      in_run = false;
    }
  }
  return {static_cast<double>(losses) / n, runs ? static_cast<double>(losses) / runs : 0.0, runs};
}

Outcome criterion8() {
  Outcome out;
  Check check{out};
  const int n = 1'000'000;

  // Wi-Fi: Gilbert-Elliott with stationary 6%. Mean-estimate variance folds
  // in the chain's autocorrelation (lambda = 1 - pgb - pbg).
  ChannelProfile wifi = preset_profile("wifi");
  wifi.seed = 88001;
  const auto& ge = std::get<GilbertElliottLoss>(wifi.loss);
  double pi_bad = ge.p_good_to_bad / (ge.p_good_to_bad + ge.p_bad_to_good);
  double lambda = 1.0 - ge.p_good_to_bad - ge.p_bad_to_good;
  double p_wifi = 0.06;
  double var_mean = p_wifi * (1 - p_wifi) + 2.0 * ge.loss_in_bad * ge.loss_in_bad * pi_bad *
                                                (1 - pi_bad) * lambda / (1 - lambda);
  double sigma_wifi = std::sqrt(var_mean / n);
  RunStats ws = channel_stats(wifi, n);
  check(std::abs(ws.loss_fraction - p_wifi) <= 3 * sigma_wifi,
        "wifi loss " + fmt(ws.loss_fraction) + " outside 0.06 +- 3*" + fmt(sigma_wifi));

  // Loss-run length: geometric with continuation P(B->B)*loss_in_bad = 0.375.
  double cont = (1.0 - ge.p_bad_to_good) * ge.loss_in_bad;
  double run_mean = 1.0 / (1.0 - cont);                    // 1.6
  double run_var = cont / ((1.0 - cont) * (1.0 - cont));   // 0.96
  double sigma_run = std::sqrt(run_var / static_cast<double>(ws.run_count));
  check(std::abs(ws.mean_run_length - run_mean) <= 3 * sigma_run,
        "wifi run length " + fmt(ws.mean_run_length) + " outside " + fmt(run_mean) + " +- 3*" +
            fmt(sigma_run));

  // 3G: uniform 10%.
  ChannelProfile threeg = preset_profile("threeg");
  threeg.seed = 88002;
  double p_3g = 0.10;
  double sigma_3g = std::sqrt(p_3g * (1 - p_3g) / n);
  RunStats ts = channel_stats(threeg, n);
  check(std::abs(ts.loss_fraction - p_3g) <= 3 * sigma_3g,
        "threeg loss " + fmt(ts.loss_fraction) + " outside 0.10 +- 3*" + fmt(sigma_3g));
  double run_mean_3g = 1.0 / (1.0 - p_3g);
  double run_var_3g = p_3g / ((1.0 - p_3g) * (1.0 - p_3g));
  double sigma_run_3g = std::sqrt(run_var_3g / static_cast<double>(ts.run_count));
  check(std::abs(ts.mean_run_length - run_mean_3g) <= 3 * sigma_run_3g,
        "threeg run length " + fmt(ts.mean_run_length) + " outside " + fmt(run_mean_3g));

  // Burstiness: wifi loss runs strictly longer than a matched Bernoulli.
  ChannelProfile matched;
  matched.name = "bern6";
  matched.loss = BernoulliLoss{0.06};
  matched.delay = {0.05, 0.0};
  matched.capacity_bps = 1e9;
  matched.seed = 88003;
  RunStats bs = channel_stats(matched, n);
  check(ws.mean_run_length > bs.mean_run_length,
        "wifi run mean " + fmt(ws.mean_run_length) + " not above matched Bernoulli " +
            fmt(bs.mean_run_length));

  if (out.pass) {
    out.detail = "wifi loss " + fmt(ws.loss_fraction) + ", run mean " + fmt(ws.mean_run_length) +
                 " (model 1.6) vs Bernoulli " + fmt(bs.mean_run_length) + "; threeg loss " +
                 fmt(ts.loss_fraction);
  }
  return out;
}

// ---------------------------------------------------------------------------
// C9: byte-level determinism of reports and traces.

Outcome criterion9() {
  Outcome out;
  Check check{out};
  StreamSpec spec;
  spec.codec = MediaCodec::kMpeg4Divx;
  spec.duration_s = 12.0;
  ChannelProfile wifi = preset_profile("wifi");
  AnalysisOptions analysis;
  analysis.network = wifi.network;
  analysis.codec = spec.codec;
  CompareOptions copt;
  copt.n_runs = 100;
  copt.base_seed = 20260811;
  copt.dup_gap = 4;

  auto report = [&]() {
    CompareResult r = compare(spec, wifi, copt, analysis);
    return render_compare_report(spec, wifi, copt, analysis, r);
  };
  std::string first = report();
  std::string second = report();
  check(!first.empty() && first == second, "compare reports differ between invocations");

  // Trace files from two identical runs must be byte-identical on disk.
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "kfdup_acceptance";
  fs::create_directories(dir);
  auto run_traces = [&](const fs::path& sent, const fs::path& recv) {
    ChannelProfile prof = wifi;
    prof.seed = 4711;
    RunOptions run;
    run.dup.policy = DupPolicy::kKeyFrames;
    run.dup.gap = 4;
    run.gen_seed = 31337;
    RunResult res = run_pipeline(spec, prof, run, analysis);
    write_trace_file(sent.string(), res.sent_records);
    write_trace_file(recv.string(), res.delivered_records);
  };
  run_traces(dir / "a_sent.trace", dir / "a_recv.trace");
  run_traces(dir / "b_sent.trace", dir / "b_recv.trace");
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::string sa = slurp(dir / "a_sent.trace");
  check(!sa.empty() && sa == slurp(dir / "b_sent.trace"), "sent traces differ");
  std::string ra = slurp(dir / "a_recv.trace");
  check(!ra.empty() && ra == slurp(dir / "b_recv.trace"), "delivered traces differ");

  if (out.pass) {
    out.detail = "reports (" + std::to_string(first.size()) + " B) and traces (" +
                 std::to_string(sa.size() + ra.size()) + " B) byte-identical across invocations";
  }
  return out;
}

// ---------------------------------------------------------------------------
// C10: parser integrity.

Outcome criterion10() {
  Outcome out;
  Check check{out};
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<uint32_t> u32;
  int failures = 0;
  for (int i = 0; i < 10'000; ++i) {
    RtpPacket p;
    p.padding = (u32(rng) & 1) != 0;
    p.extension = (u32(rng) & 1) != 0;
    p.marker = (u32(rng) & 1) != 0;
    p.payload_type = static_cast<uint8_t>(u32(rng) & 0x7f);
    p.sequence_number = static_cast<uint16_t>(u32(rng));
    p.timestamp = u32(rng);
    p.ssrc = u32(rng);
    size_t n_csrc = u32(rng) % 16;
    for (size_t k = 0; k < n_csrc; ++k) p.csrcs.push_back(u32(rng));
    p.payload.resize(u32(rng) % 1401);
    for (auto& b : p.payload) b = static_cast<uint8_t>(u32(rng));

    auto bytes = serialize_rtp(p);
    RtpPacket back = parse_rtp(bytes);
    if (!(back == p) || serialize_rtp(back) != bytes) ++failures;
  }
  check(failures == 0, std::to_string(failures) + " round-trip failures");

  // Every truncation of a set of sample packets yields a typed error, never a
  // partial parse or a crash.
  int truncations = 0;
  for (int i = 0; i < 50; ++i) {
    RtpPacket p;
    p.sequence_number = static_cast<uint16_t>(i);
    size_t n_csrc = u32(rng) % 16;
    for (size_t k = 0; k < n_csrc; ++k) p.csrcs.push_back(u32(rng));
    auto bytes = serialize_rtp(p);
    size_t header = 12 + 4 * n_csrc;
    for (size_t cut = 0; cut < header; ++cut) {
      try {
        parse_rtp(std::span(bytes.data(), cut));
        check(false, "truncated parse at " + std::to_string(cut) + " did not throw");
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kTooShort) {
          check(false, "truncation raised " + std::string(e.name()));
        }
        ++truncations;
      }
    }
  }
  if (out.pass) {
    out.detail = "10000 randomized round-trips exact; " + std::to_string(truncations) +
                 " truncations all typed TooShort";
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    CriterionFn fn;
  };
  const Criterion criteria[] = {
      {"C1 mos-model-exactness", criterion1},
      {"C2 gap-scale-reproduction", criterion2},
      {"C3 key-dup-overhead-7pct", criterion3},
      {"C4 policy-ordering-wifi", criterion4},
      {"C5 dup-effectiveness-p-squared", criterion5},
      {"C6 dedup-correctness", criterion6},
      {"C7 loss-jitter-split-80-20", criterion7},
      {"C8 channel-statistics", criterion8},
      {"C9 determinism", criterion9},
      {"C10 parser-integrity", criterion10},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("unhandled exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.2fs)\n", out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(),
                secs);
    if (!out.pass) ++failed;
  }
  if (failed) {
    std::printf("%d of %zu acceptance criteria FAILED\n", failed, std::size(criteria));
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", std::size(criteria));
  return 0;
}
