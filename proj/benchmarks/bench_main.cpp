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

#include <benchmark/benchmark.h>

#include "kfdup/dedup.hpp"
#include "kfdup/keyframe.hpp"
#include "kfdup/netem.hpp"
#include "kfdup/pipeline.hpp"
#include "kfdup/rtp.hpp"

namespace {

using namespace kfdup;

std::vector<uint8_t> sample_datagram() {
  RtpPacket p;
  p.payload_type = 96;
  p.sequence_number = 4242;
  p.timestamp = 90000;
  p.ssrc = 0xdeadbeef;
  p.payload.resize(1400);
  for (size_t i = 0; i < p.payload.size(); ++i) p.payload[i] = static_cast<uint8_t>(i);
  return serialize_rtp(p);
}

void BM_ParseRtp(benchmark::State& state) {
  auto bytes = sample_datagram();
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_rtp(bytes));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_ParseRtp);

void BM_SerializeRtp(benchmark::State& state) {
  RtpPacket p = parse_rtp(sample_datagram());
  for (auto _ : state) {
    benchmark::DoNotOptimize(serialize_rtp(p));
  }
}
BENCHMARK(BM_SerializeRtp);

void BM_ClassifyPayload(benchmark::State& state) {
  StreamSpec spec;
  spec.duration_s = 1.0;
  auto src = generate(spec, 1);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        classify_payload(MediaCodec::kMpeg4Divx, src[i % src.size()].packet.payload));
    ++i;
  }
}
BENCHMARK(BM_ClassifyPayload);

void BM_DedupAccept(benchmark::State& state) {
  Deduplicator dedup;
  uint16_t seq = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dedup.accept(seq));
    seq += (seq % 3 == 0) ? 0 : 1;  // every third packet repeats
  }
}
BENCHMARK(BM_DedupAccept);

void BM_TransmitWifi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<SendEvent> sends;
  sends.reserve(static_cast<size_t>(n));
  uint16_t seq = 0;
  for (int i = 0; i < n; ++i) {
    SendEvent ev;
    ev.packet.sequence_number = seq++;
    ev.send_time_us = i * 1000;
    sends.push_back(ev);
  }
  ChannelProfile wifi = preset_profile("wifi");
  wifi.seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(transmit(sends, wifi));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TransmitWifi)->Arg(1000)->Arg(10000);

void BM_RunPipelineWifi(benchmark::State& state) {
  StreamSpec spec;
  spec.duration_s = 4.0;
  ChannelProfile wifi = preset_profile("wifi");
  wifi.seed = 11;
  AnalysisOptions analysis;
  analysis.network = wifi.network;
  analysis.codec = spec.codec;
  RunOptions run;
  run.dup.policy = DupPolicy::kKeyFrames;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pipeline(spec, wifi, run, analysis));
  }
}
BENCHMARK(BM_RunPipelineWifi);

}  // namespace

BENCHMARK_MAIN();
