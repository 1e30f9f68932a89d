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

#include "mfocus/focus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfocus/errors.hpp"

namespace mfocus {

Coord max_coord(Dims3 dims) {
  return {static_cast<float>(dims.x - 1), static_cast<float>(dims.y - 1),
          static_cast<float>(dims.z - 1)};
}

Volume3D fuse(const FeatureMaps& maps, FusionWeights weights, float epsilon) {
  if (maps.mean.dims() != maps.stddev.dims() ||
      maps.mean.dims() != maps.motion.dims())
    throw Error("feature maps must share dims");
  if (weights.ws < 0.0f || weights.wt < 0.0f ||
      !(weights.ws + weights.wt > 0.0f))
    throw UsageError("fusion weights must be non-negative with positive sum");

  const Volume3D rm = normalize(maps.mean, epsilon);
  const Volume3D rs = normalize(maps.stddev, epsilon);
  const Volume3D rt = normalize(maps.motion, epsilon);

  Volume3D out(maps.mean.dims());
  auto a = rm.values();
  auto b = rs.values();
  auto c = rt.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const float xs = 0.5f * (a[i] + b[i]);
    dst[i] = weights.ws * xs + weights.wt * c[i];
  }
  return out;
}

Coord energy_center(const Volume3D& v) {
  const Dims3& d = v.dims();
  double sum = 0.0, sx = 0.0, sy = 0.0, sz = 0.0;
  for (int z = 0; z < d.z; ++z) {
    for (int y = 0; y < d.y; ++y) {
      for (int x = 0; x < d.x; ++x) {
        const double w = v(z, y, x);
        sum += w;
        sx += w * x;
        sy += w * y;
        sz += w * z;
      }
    }
  }
  if (!(sum > 0.0))
    throw DegenerateEnergyError("total energy is zero; no center to weight");
  return {static_cast<float>(sx / sum), static_cast<float>(sy / sum),
          static_cast<float>(sz / sum)};
}

std::pair<Mask3, float> threshold_mask(const Volume3D& v, float p) {
  if (v.empty()) throw Error("threshold of an empty volume");
  const float q = quantile(v.values(), p);
  Mask3 mask(v.dims());
  auto in = v.values();
  auto out = mask.values();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] > q ? 1 : 0;
  return {std::move(mask), q};
}

float scale_estimate(const Mask3& mask, Coord r_max, float coefficient) {
  if (!(coefficient > 0.0f))
    throw UsageError("scale coefficient must be positive");
  const std::size_t count = mask.count_set();
  if (count == 0)
    throw DegenerateEnergyError("empty mask; no scale to estimate");
  const double norm = std::sqrt(static_cast<double>(r_max.x) * r_max.x +
                                static_cast<double>(r_max.y) * r_max.y +
                                static_cast<double>(r_max.z) * r_max.z);
  if (!(norm > 0.0)) throw Error("degenerate grid: ||r_max|| is zero");
  return static_cast<float>(coefficient * std::cbrt(static_cast<double>(count)) /
                            norm);
}

Volume3D rbf_field(Dims3 dims, Coord center, float scale, Coord r_max) {
  if (!(scale > 0.0f)) throw Error("rbf scale must be positive");
  if (!dims.positive()) throw Error("rbf grid extents must be >= 1");
  Volume3D out(dims);
  const double s2 = static_cast<double>(scale) * scale;
  // The field is mathematically in (0, 1]; keep the far tail above zero
  // where exp underflows float.
  const double floor_value = std::numeric_limits<float>::min();
  for (int z = 0; z < dims.z; ++z) {
    const double dz = r_max.z > 0.0f ? (z - center.z) / r_max.z : 0.0;
    for (int y = 0; y < dims.y; ++y) {
      const double dy = r_max.y > 0.0f ? (y - center.y) / r_max.y : 0.0;
      for (int x = 0; x < dims.x; ++x) {
        const double dx = r_max.x > 0.0f ? (x - center.x) / r_max.x : 0.0;
        const double d2 = dx * dx + dy * dy + dz * dz;
        out(z, y, x) =
            static_cast<float>(std::max(std::exp(-d2 / s2), floor_value));
      }
    }
  }
  return out;
}

FocusResult run_focus(const Volume4D& input, const FocusConfig& config) {
  const Volume4D norm = normalize(input, config.epsilon);

  FocusResult result;
  result.features = compute_features(norm, config.static_frame,
                                     config.temporal_boundary);

  Volume3D fused = fuse(result.features, config.weights, config.epsilon);
  if (config.smooth_sigma > 0.0f)
    fused = gaussian_smooth(fused, config.smooth_sigma);
  result.fused = std::move(fused);

  auto [mask, threshold] = threshold_mask(result.fused, config.percentile);
  result.mask = std::move(mask);
  result.threshold = threshold;

  const Dims3 dims = result.fused.dims();
  const Coord r_max = max_coord(dims);
  try {
    result.center = energy_center(result.fused);
    result.scale = scale_estimate(result.mask, r_max, config.scale_coefficient);
  } catch (const DegenerateEnergyError&) {
    // No usable signal (e.g. a static, featureless acquisition): fall back
    // to the geometric center with a fixed mid-range scale.
    result.center = {0.5f * r_max.x, 0.5f * r_max.y, 0.5f * r_max.z};
    result.scale = 1.0f / 3.0f;
    result.fallback = true;
  }
  result.rbf = rbf_field(dims, result.center, result.scale, r_max);
  return result;
}

}  // namespace mfocus
