// Copyright 2026 The MotionFocus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "mfocus/features.hpp"
#include "mfocus/focus.hpp"
#include "mfocus/metrics.hpp"
#include "mfocus/phantom.hpp"
#include "mfocus/roi.hpp"
#include "mfocus/tensor_ops.hpp"

using namespace mfocus;

namespace {

PhantomOutput make_phantom(int t, int z, int hw) {
  PhantomSpec spec;
  spec.dims = {t, z, hw, hw};
  spec.center = {hw / 2.0f, hw / 2.0f, z / 2.0f};
  const float r = 0.12f * hw;
  spec.inner_diastole = 0.6f * r;
  spec.outer_diastole = r;
  spec.inner_systole = 0.45f * r;
  spec.outer_systole = 0.78f * r;
  return generate(spec);
}

void BM_Normalize(benchmark::State& state) {
  const PhantomOutput p = make_phantom(12, 8, 128);
  for (auto _ : state)
    benchmark::DoNotOptimize(normalize(p.volume));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(p.volume.size()));
}
BENCHMARK(BM_Normalize)->Unit(benchmark::kMillisecond);

void BM_MeanStdImage(benchmark::State& state) {
  const PhantomOutput p = make_phantom(12, 8, 128);
  const Volume3D frame = p.volume.frame(0);
  for (auto _ : state) {
    const Volume3D mean = mean_image(frame);
    benchmark::DoNotOptimize(std_image(frame, mean));
  }
}
BENCHMARK(BM_MeanStdImage)->Unit(benchmark::kMillisecond);

void BM_MotionEnergy(benchmark::State& state) {
  const PhantomOutput p = make_phantom(12, 8, 128);
  for (auto _ : state)
    benchmark::DoNotOptimize(motion_energy(p.volume));
}
BENCHMARK(BM_MotionEnergy)->Unit(benchmark::kMillisecond);

void BM_GaussianSmooth(benchmark::State& state) {
  const PhantomOutput p = make_phantom(12, 8, 128);
  const Volume3D map = motion_energy(p.volume);
  for (auto _ : state)
    benchmark::DoNotOptimize(gaussian_smooth(map, 5.0f));
}
BENCHMARK(BM_GaussianSmooth)->Unit(benchmark::kMillisecond);

void BM_RunFocus(benchmark::State& state) {
  const int hw = static_cast<int>(state.range(0));
  const PhantomOutput p = make_phantom(12, 8, hw);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_focus(p.volume));
}
BENCHMARK(BM_RunFocus)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ExtractRoi(benchmark::State& state) {
  const PhantomOutput p = make_phantom(12, 8, 256);
  const FocusResult focus = run_focus(p.volume);
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_roi(p.volume, focus, {}));
}
BENCHMARK(BM_ExtractRoi)->Unit(benchmark::kMillisecond);

void BM_ResampleBicubic(benchmark::State& state) {
  Image2D img{256, 256, std::vector<float>(256 * 256)};
  for (int y = 0; y < 256; ++y)
    for (int x = 0; x < 256; ++x)
      img.at(y, x) = static_cast<float>((x * 31 + y * 17) % 97);
  for (auto _ : state)
    benchmark::DoNotOptimize(resample_bicubic(img, 128, 128));
}
BENCHMARK(BM_ResampleBicubic)->Unit(benchmark::kMicrosecond);

void BM_ThresholdSegmenter(benchmark::State& state) {
  const PhantomOutput p = make_phantom(20, 10, static_cast<int>(state.range(0)));
  const Volume4D v = normalize(p.volume);
  for (auto _ : state)
    benchmark::DoNotOptimize(threshold_segmenter(v, 0.7f));
}
BENCHMARK(BM_ThresholdSegmenter)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
