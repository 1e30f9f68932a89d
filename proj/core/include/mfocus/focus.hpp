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

#ifndef MFOCUS_FOCUS_HPP
#define MFOCUS_FOCUS_HPP

#include <utility>

#include "mfocus/features.hpp"
#include "mfocus/tensor_ops.hpp"
#include "mfocus/volume.hpp"

namespace mfocus {

/// Blend weights for the static (w_s) and motion (w_t) features.
/// Both must be non-negative with a positive sum.
struct FusionWeights {
  float ws = 0.1f;
  float wt = 0.9f;
};

struct FocusConfig {
  FusionWeights weights{};
  float percentile = 0.9f;
  float smooth_sigma = 5.0f;
  float epsilon = kDefaultEpsilon;
  // Scale coefficient of the cube-root volume estimate.
  float scale_coefficient = 3.0f;
  Boundary temporal_boundary = Boundary::kPeriodic;
  StaticFrame static_frame = StaticFrame::kFirst;
};

/// Everything the localization stage produces, intermediates included.
struct FocusResult {
  Volume3D fused;        // smoothed fused energy field
  Coord center;          // energy-weighted centroid
  float scale = 0.0f;    // dimensionless radius estimate
  Mask3 mask;            // voxels strictly above the percentile threshold
  Volume3D rbf;          // Gaussian focus field, values in (0, 1]
  float threshold = 0.0f;
  bool fallback = false;  // degenerate energy; geometric-center fallback used
  FeatureMaps features;
};

/// Per-axis maximum coordinate (W-1, H-1, Z-1) of a grid.
Coord max_coord(Dims3 dims);

// Fuse static and motion features. Each of mean, std and motion is min-max
// rescaled to (0,1] independently (constant maps rescale to 1), the static
// map is the average of the rescaled mean and std, and the result is
//   v = w_s * x_s + w_t * x_t.
Volume3D fuse(const FeatureMaps& maps, FusionWeights weights,
              float epsilon = kDefaultEpsilon);

/// Energy-weighted centroid of all voxel coordinates. Throws
/// DegenerateEnergyError when the total energy is not positive.
Coord energy_center(const Volume3D& v);

/// Mask of values strictly above the nearest-rank p-quantile, plus the
/// threshold itself.
std::pair<Mask3, float> threshold_mask(const Volume3D& v, float p = 0.9f);

/// Dimensionless scale from the mask cardinality:
///   sigma_v = coefficient * cbrt(count) / ||r_max||.
/// Throws DegenerateEnergyError on an empty mask.
float scale_estimate(const Mask3& mask, Coord r_max, float coefficient = 3.0f);

// Gaussian radial basis field. Distances are normalized per axis by r_max:
//   d_i = || (r_i - center) / r_max ||,   y_i = exp(-(d_i / scale)^2).
// Axes of extent 1 contribute zero distance.
Volume3D rbf_field(Dims3 dims, Coord center, float scale, Coord r_max);

// Full localization pipeline: normalize, features, fuse, smooth, threshold,
// center, scale, RBF. Degenerate energy (zero sum or empty mask) is not an
// error here: the result is marked `fallback` with the geometric center and
// scale 1/3.
FocusResult run_focus(const Volume4D& input, const FocusConfig& config = {});

}  // namespace mfocus

#endif  // MFOCUS_FOCUS_HPP
