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

// kfdup: key-frame duplication toolkit for RTP streams.
//
//   gen      synthesize a labeled RTP stream trace
//   detect   classify key/delta frames in a trace
//   send     apply a duplication policy to a sent trace
//   channel  push a sent trace through the emulated wireless channel
//   recv     receiver-side duplicate suppression
//   analyze  metrics + MOS model over sent/received traces
//   compare  the three-policy duplication experiment
//   classify GAP-scale rating for a (loss, jitter) operating point

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kfdup/config.hpp"
#include "kfdup/errors.hpp"
#include "kfdup/pipeline.hpp"

using namespace kfdup;

namespace {

struct CommonFlags {
  std::string profile = "wifi";
  std::string config_path;
  std::string codec = "divx";
  std::optional<uint64_t> seed;
  std::optional<std::string> network;
};

ChannelProfile resolve_profile(const CommonFlags& c) {
  ChannelProfile p = preset_profile(c.profile);
  if (!c.config_path.empty()) {
    Config cfg = Config::parse_file(c.config_path);
    p = cfg.apply_profile(std::move(p));
  }
  if (c.seed) p.seed = *c.seed;
  if (c.network) p.network = network_from_string(*c.network);
  return p;
}

AnalysisOptions resolve_analysis(const CommonFlags& c, const ChannelProfile& profile) {
  AnalysisOptions a;
  a.network = profile.network;
  a.codec = codec_from_string(c.codec);
  if (!c.config_path.empty()) {
    Config cfg = Config::parse_file(c.config_path);
    a.table = cfg.apply_table(std::move(a.table));
    a.thresholds = cfg.apply_thresholds(a.thresholds);
  }
  return a;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << text;
}

void write_records(const std::string& path, const std::vector<PacketRecord>& records) {
  if (path.empty() || path == "-") {
    write_trace(std::cout, records);
    return;
  }
  write_trace_file(path, records);
}

void add_spec_flags(CLI::App* cmd, StreamSpec* spec) {
  cmd->add_option("--fps", spec->fps, "frames per second");
  cmd->add_option("--bitrate", spec->bitrate_bps, "stream bitrate, bits/second");
  cmd->add_option("--duration", spec->duration_s, "stream duration, seconds");
  cmd->add_option("--gop", spec->gop_size, "frames per group of pictures");
  cmd->add_option("--key-fraction", spec->key_byte_fraction, "share of payload bytes in key frames");
  cmd->add_option("--mtu", spec->mtu_payload, "payload bytes per packet");
  cmd->add_option("--ssrc", spec->ssrc, "RTP ssrc");
  cmd->add_option("--start-seq", spec->start_seq, "first sequence number");
  cmd->add_option("--payload-type", spec->payload_type, "RTP payload type");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kfdup: key-frame duplication toolkit for RTP video streams"};
  app.require_subcommand(1);

  CommonFlags common;
  app.add_option("--profile", common.profile, "channel preset name")->capture_default_str();
  app.add_option("--config", common.config_path, "key-value config file (profile/table/thresholds)");
  app.add_option("--codec", common.codec, "mpeg2 | divx | wmv9")->capture_default_str();
  app.add_option("--seed", common.seed, "channel seed (no wall-clock entropy, ever)");
  app.add_option("--network", common.network, "override network kind: wifi | threeg | wimax");
  std::string common_policy = "key";
  auto* policy_opt =
      app.add_option("--policy", common_policy, "duplication policy: none | key | all")
          ->capture_default_str();
  app.fallthrough();

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "synthesize a labeled RTP stream trace");
  StreamSpec gen_spec;
  std::string gen_out;
  uint64_t gen_seed = 1;
  bool gen_size_only = false;
  bool gen_no_truth = false;
  add_spec_flags(gen, &gen_spec);
  gen->add_option("-o,--out", gen_out, "output trace file ('-' = stdout)");
  gen->add_option("--gen-seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_flag("--size-only", gen_size_only, "omit payload bytes from the trace");
  gen->add_flag("--no-truth", gen_no_truth, "omit ground-truth frame labels");

  // detect -------------------------------------------------------------
  auto* detect = app.add_subcommand("detect", "classify key/delta frames in a trace");
  std::string detect_in, detect_out;
  detect->add_option("-i,--in", detect_in, "input trace")->required();
  detect->add_option("-o,--out", detect_out, "write re-labeled trace here");

  // send ---------------------------------------------------------------
  auto* send = app.add_subcommand("send", "apply a duplication policy to a sent trace");
  std::string send_in, send_out, send_scope = "whole-frame";
  int send_gap = 0;
  send->add_option("-i,--in", send_in, "input sent trace")->required();
  send->add_option("-o,--out", send_out, "output trace ('-' = stdout)");
  send->add_option("--dup-scope", send_scope, "start-packet | whole-frame")->capture_default_str();
  send->add_option("--dup-gap", send_gap, "packets between an original and its copy")
      ->capture_default_str();

  // channel ------------------------------------------------------------
  auto* channel = app.add_subcommand("channel", "emulate the wireless channel over a sent trace");
  std::string chan_in, chan_out;
  bool chan_inflation = false;
  channel->add_option("-i,--in", chan_in, "input sent trace")->required();
  channel->add_option("-o,--out", chan_out, "output arrival trace ('-' = stdout)");
  channel->add_flag("--load-inflation", chan_inflation, "scale loss with offered rate");

  // recv ---------------------------------------------------------------
  auto* recv = app.add_subcommand("recv", "drop duplicate packets at the receiving end");
  std::string recv_in, recv_out;
  int recv_window = kDefaultDedupWindow;
  recv->add_option("-i,--in", recv_in, "input arrival trace")->required();
  recv->add_option("-o,--out", recv_out, "output kept-packet trace ('-' = stdout)");
  recv->add_option("--window", recv_window, "dedup window, sequence numbers")
      ->capture_default_str();

  // analyze --------------------------------------------------------------
  auto* analyze_cmd = app.add_subcommand("analyze", "metrics and MOS model over traces");
  std::string an_sent, an_recv, an_out;
  bool an_mean_abs = false;
  double an_error_window_s = 1.0;
  int an_window = kDefaultDedupWindow;
  analyze_cmd->add_option("--sent", an_sent, "sent-side trace")->required();
  analyze_cmd->add_option("--recv", an_recv, "receiver-side arrival trace")->required();
  analyze_cmd->add_option("-o,--out", an_out, "report file ('-' = stdout)");
  analyze_cmd->add_flag("--jitter-mean-abs", an_mean_abs,
                        "feed mean |transit delta| to the model instead of the smoothed estimator");
  analyze_cmd->add_option("--error-window", an_error_window_s,
                          "window around loss events for jitter-at-error, seconds")
      ->capture_default_str();
  analyze_cmd->add_option("--window", an_window, "dedup window, sequence numbers")
      ->capture_default_str();

  // compare --------------------------------------------------------------
  auto* cmp = app.add_subcommand("compare", "run the three-policy duplication experiment");
  StreamSpec cmp_spec;
  cmp_spec.duration_s = 12.0;
  std::string cmp_out, cmp_scope = "whole-frame", cmp_dump_dir;
  CompareOptions cmp_opt;
  add_spec_flags(cmp, &cmp_spec);
  cmp->add_option("-o,--out", cmp_out, "report file ('-' = stdout)");
  cmp->add_option("--runs", cmp_opt.n_runs, "paired-seed runs per policy")->capture_default_str();
  cmp->add_option("--base-seed", cmp_opt.base_seed, "experiment base seed")->required();
  cmp->add_option("--dup-scope", cmp_scope, "start-packet | whole-frame")->capture_default_str();
  cmp->add_option("--dup-gap", cmp_opt.dup_gap, "packets between original and copy")
      ->capture_default_str();
  bool cmp_no_inflation = false;
  cmp->add_flag("--no-load-inflation", cmp_no_inflation, "disable rate-dependent loss");
  cmp->add_option("--dump-traces", cmp_dump_dir, "write per-run traces into this directory");

  // classify -------------------------------------------------------------
  auto* classify_cmd = app.add_subcommand("classify", "GAP rating for a (loss, jitter) point");
  double cl_loss = 0.0, cl_jitter = 0.0;
  classify_cmd->add_option("--loss", cl_loss, "packet loss, percent")->required();
  classify_cmd->add_option("--jitter", cl_jitter, "jitter, seconds")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      gen_spec.codec = codec_from_string(common.codec);
      auto src = generate(gen_spec, gen_seed);
      auto records = source_records(src, !gen_size_only);
      if (gen_no_truth) {
        for (auto& r : records) r.frame_kind.reset();
      }
      write_records(gen_out, records);
      std::cerr << "kfdup gen: " << records.size() << " packets, codec "
                << to_string(gen_spec.codec) << "\n";
    } else if (*detect) {
      MediaCodec codec = codec_from_string(common.codec);
      auto records = read_trace_file(detect_in);
      FrameTracker tracker(codec);
      SeqUnwrapper uw;
      int64_t key_packets = 0, delta_packets = 0, unknown_packets = 0;
      int64_t truth_available = 0, mismatches = 0;
      for (auto& r : records) {
        if (!uw.feed(r.seq).is_new) continue;
        RtpPacket p;
        p.marker = r.marker;
        if (r.payload) p.payload = *r.payload;
        LabeledPacket lp = tracker.label(std::move(p));
        switch (lp.kind) {
          case FrameKind::kKey: ++key_packets; break;
          case FrameKind::kDelta: ++delta_packets; break;
          case FrameKind::kUnknown: ++unknown_packets; break;
        }
        if (r.frame_kind) {
          ++truth_available;
          if (*r.frame_kind != lp.kind) ++mismatches;
        }
        r.frame_kind = lp.kind;
      }
      if (!detect_out.empty()) write_records(detect_out, records);
      std::cout << "packets " << records.size() << "\n"
                << "key " << key_packets << "\n"
                << "delta " << delta_packets << "\n"
                << "unknown " << unknown_packets << "\n";
      if (truth_available > 0) {
        std::cout << "truth_labels " << truth_available << "\n"
                  << "mismatches " << mismatches << "\n";
      }
      if (mismatches > 0) return 1;
    } else if (*send) {
      DupOptions opt;
      opt.policy = policy_from_string(common_policy);
      opt.scope = scope_from_string(send_scope);
      opt.gap = send_gap;
      auto records = read_trace_file(send_in);
      auto wire = duplicate_records(records, opt, codec_from_string(common.codec));
      write_records(send_out, wire);
      std::cerr << "kfdup send: " << records.size() << " in, " << wire.size() << " out (policy "
                << common_policy << ")\n";
    } else if (*channel) {
      bool config_has_seed = false;
      if (!common.config_path.empty()) {
        config_has_seed = Config::parse_file(common.config_path).has("profile.seed");
      }
      if (!common.seed && !config_has_seed) {
        throw Error(ErrorCode::kConfigMalformed,
                    "channel emulation needs an explicit --seed (or profile.seed in --config); "
                    "wall-clock entropy is never used");
      }
      ChannelProfile profile = resolve_profile(common);
      TransmitOptions topt;
      topt.load_inflation = chan_inflation;
      auto records = read_trace_file(chan_in);
      auto arrivals = channel_records(records, profile, topt);
      write_records(chan_out, arrivals);
      std::cerr << "kfdup channel: " << records.size() << " sent, " << arrivals.size()
                << " delivered (profile " << profile.name << ", seed " << profile.seed << ")\n";
    } else if (*recv) {
      auto records = read_trace_file(recv_in);
      DedupOutcome out = dedup_records(records, recv_window);
      write_records(recv_out, out.kept);
      std::cerr << "kfdup recv: " << out.kept.size() << " kept, " << out.duplicate_drops
                << " duplicate drops, " << out.stale_drops << " stale drops\n";
    } else if (*analyze_cmd) {
      ChannelProfile profile = resolve_profile(common);
      AnalysisOptions opts = resolve_analysis(common, profile);
      opts.use_mean_abs_jitter = an_mean_abs;
      opts.error_window_us = static_cast<TimeMicros>(an_error_window_s * kMicrosPerSecond);
      opts.dedup_window = an_window;
      auto sent = read_trace_file(an_sent);
      auto delivered = read_trace_file(an_recv);
      AnalyzeResult result = analyze_records(sent, delivered, opts);
      RunMeta meta;
      meta.profile_name = profile.name;
      if (policy_opt->count() > 0) meta.policy = common_policy;
      write_text(an_out, render_run_report(meta, opts, result));
    } else if (*cmp) {
      cmp_spec.codec = codec_from_string(common.codec);
      ChannelProfile profile = resolve_profile(common);
      AnalysisOptions analysis = resolve_analysis(common, profile);
      cmp_opt.scope = scope_from_string(cmp_scope);
      cmp_opt.load_inflation = !cmp_no_inflation;
      CompareResult result = compare(cmp_spec, profile, cmp_opt, analysis);
      write_text(cmp_out, render_compare_report(cmp_spec, profile, cmp_opt, analysis, result));
      if (!cmp_dump_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cmp_dump_dir);
        for (int r = 0; r < cmp_opt.n_runs; ++r) {
          auto [gen_seed2, chan_seed] = compare_run_seeds(cmp_opt.base_seed, r);
          for (DupPolicy policy : {DupPolicy::kNone, DupPolicy::kKeyFrames, DupPolicy::kAll}) {
            ChannelProfile rp = profile;
            rp.seed = chan_seed;
            RunOptions ro;
            ro.dup = {policy, cmp_opt.scope, cmp_opt.dup_gap};
            ro.load_inflation = cmp_opt.load_inflation;
            ro.gen_seed = gen_seed2;
            RunResult rr = run_pipeline(cmp_spec, rp, ro, analysis);
            char stem[64];
            std::snprintf(stem, sizeof(stem), "run%03d_%s", r,
                          std::string(to_string(policy)).c_str());
            write_trace_file((fs::path(cmp_dump_dir) / (std::string(stem) + ".sent.trace")).string(),
                             rr.sent_records);
            write_trace_file((fs::path(cmp_dump_dir) / (std::string(stem) + ".recv.trace")).string(),
                             rr.delivered_records);
          }
        }
        std::cerr << "kfdup compare: traces for " << cmp_opt.n_runs << " runs x 3 policies in "
                  << cmp_dump_dir << "\n";
      }
    } else if (*classify_cmd) {
      GapThresholds thresholds;
      if (!common.config_path.empty()) {
        thresholds = Config::parse_file(common.config_path).apply_thresholds(thresholds);
      }
      GapResult r = gap_classify(cl_loss, cl_jitter, thresholds);
      std::cout << "loss = " << to_string(r.loss) << "\n"
                << "jitter = " << to_string(r.jitter) << "\n"
                << "overall = " << to_string(r.overall) << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "kfdup: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "kfdup: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
