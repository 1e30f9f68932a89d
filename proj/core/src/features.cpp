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

#include "mfocus/features.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mfocus/errors.hpp"

namespace mfocus {

Kernel3 mean_kernel3() {
  Kernel3 k;
  k.dims = {3, 3, 3};
  k.weights.assign(27, 1.0 / 27.0);
  return k;
}

Kernel4 mean_kernel4() {
  Kernel4 k;
  k.dims = {1, 3, 3, 3};
  k.weights.assign(27, 1.0 / 27.0);
  return k;
}

Kernel4 temporal_sobel_kernel() {
  Kernel4 k;
  k.dims = {3, 1, 1, 1};
  k.weights = {-1.0, 0.0, 1.0};
  return k;
}

Volume3D mean_image(const Volume3D& frame) {
  return convolve(frame, mean_kernel3(), Boundary::kReplicate);
}

Volume3D std_image(const Volume3D& frame, const Volume3D& mean,
                   std::int64_t* clamped) {
  if (frame.dims() != mean.dims())
    throw Error("frame and mean image dims differ");
  Volume3D sq(frame.dims());
  {
    auto f = frame.values();
    auto m = mean.values();
    auto d = sq.values();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const float dev = f[i] - m[i];
      d[i] = dev * dev;
    }
  }
  Volume3D var = convolve(sq, mean_kernel3(), Boundary::kReplicate);
  std::int64_t clamps = 0;
  for (float& v : var.values()) {
    if (v < 0.0f) {
      v = 0.0f;
      ++clamps;
    } else {
      v = std::sqrt(v);
    }
  }
  if (clamped) *clamped = clamps;
  return var;
}

Volume3D motion_energy(const Volume4D& v, Boundary temporal_boundary) {
  const Dims4& d = v.dims();
  if (d.t < 3) throw Error("motion energy needs at least 3 frames");

  const Volume4D dt = convolve(v, temporal_sobel_kernel(), temporal_boundary);
  Volume3D out(d.spatial());
  const std::size_t n = d.spatial().voxels();
  std::vector<double> acc(n, 0.0);
  auto src = dt.values();
  for (int t = 0; t < d.t; ++t) {
    const float* frame = src.data() + static_cast<std::size_t>(t) * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = frame[i];
      acc[i] += g * g;
    }
  }
  auto dst = out.values();
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = static_cast<float>(std::sqrt(acc[i] / d.t));
  return out;
}

namespace {

// 1D Gaussian taps truncated at +-3*sigma, renormalized to unit sum. The
// radius is capped so the kernel never exceeds the axis extent.
std::vector<double> gaussian_taps(float sigma, int extent) {
  int radius = static_cast<int>(std::ceil(3.0 * sigma));
  radius = std::min(radius, (extent - 1) / 2);
  radius = std::max(radius, 0);
  std::vector<double> w(2 * radius + 1);
  const double s2 = 2.0 * static_cast<double>(sigma) * sigma;
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double g = std::exp(-(static_cast<double>(i) * i) / s2);
    w[i + radius] = g;
    sum += g;
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace

Volume3D gaussian_smooth(const Volume3D& map, float sigma, Boundary boundary) {
  if (sigma < 0.0f) throw UsageError("sigma must be non-negative");
  if (sigma == 0.0f) return map;

  const Dims3& d = map.dims();
  Volume3D out = map;
  // Separable passes along x, y, z.
  {
    auto taps = gaussian_taps(sigma, d.x);
    Kernel3 k{{1, 1, static_cast<int>(taps.size())}, std::move(taps)};
    out = convolve(out, k, boundary);
  }
  {
    auto taps = gaussian_taps(sigma, d.y);
    Kernel3 k{{1, static_cast<int>(taps.size()), 1}, std::move(taps)};
    out = convolve(out, k, boundary);
  }
  {
    auto taps = gaussian_taps(sigma, d.z);
    Kernel3 k{{static_cast<int>(taps.size()), 1, 1}, std::move(taps)};
    out = convolve(out, k, boundary);
  }
  return out;
}

Volume3D time_mean_frame(const Volume4D& v) {
  const Dims4& d = v.dims();
  const std::size_t n = d.spatial().voxels();
  std::vector<double> acc(n, 0.0);
  auto src = v.values();
  for (int t = 0; t < d.t; ++t) {
    const float* frame = src.data() + static_cast<std::size_t>(t) * n;
    for (std::size_t i = 0; i < n; ++i) acc[i] += frame[i];
  }
  Volume3D out(d.spatial());
  auto dst = out.values();
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = static_cast<float>(acc[i] / d.t);
  return out;
}

FeatureMaps compute_features(const Volume4D& normalized,
                             StaticFrame static_frame,
                             Boundary temporal_boundary) {
  FeatureMaps maps;
  Volume3D frame;
  if (static_frame == StaticFrame::kTimeMean) {
    frame = time_mean_frame(normalized);
    maps.source_frame = -1;
  } else {
    frame = normalized.frame(0);
    maps.source_frame = 0;
  }
  maps.mean = mean_image(frame);
  maps.stddev = std_image(frame, maps.mean, &maps.std_clamped);
  maps.motion = motion_energy(normalized, temporal_boundary);
  return maps;
}

}  // namespace mfocus
