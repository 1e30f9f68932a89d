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

#ifndef MFOCUS_ROI_HPP
#define MFOCUS_ROI_HPP

#include <utility>
#include <vector>

#include "mfocus/focus.hpp"
#include "mfocus/volume.hpp"

namespace mfocus {

/// Half-open integer range [lo, hi) along one axis.
struct AxisRange {
  int lo = 0;
  int hi = 0;

  int extent() const noexcept { return hi - lo; }
  bool operator==(const AxisRange&) const = default;
};

/// Axis-aligned crop in voxel coordinates plus the output slice shape.
struct RoiBox {
  AxisRange x, y, z;
  Dims3 source;       // spatial dims the box was derived from
  int target_h = 0;   // 0 = no in-plane resampling
  int target_w = 0;

  bool operator==(const RoiBox&) const = default;
};

struct RoiConfig {
  float k = 2.0f;        // radius multiplier on sigma_v
  int target_h = 128;
  int target_w = 128;
  int multiple = 32;     // network stride constraint
  bool enforce_multiple = true;
  float epsilon = kDefaultEpsilon;
};

/// Simple dense 2D image used by the resampler.
struct Image2D {
  int h = 0;
  int w = 0;
  std::vector<float> data;

  float at(int y, int x) const noexcept {
    return data[static_cast<std::size_t>(y) * w + x];
  }
  float& at(int y, int x) noexcept {
    return data[static_cast<std::size_t>(y) * w + x];
  }
};

// Box around the focus center: per axis the half-extent is
// k * sigma_v * r_max_axis, floored/ceiled to integers, grown to include the
// voxel nearest the center, then clamped to the grid. k must be positive.
RoiBox box_from_focus(const FocusResult& focus, float k = 2.0f);

/// Sub-volume over all frames; values copied bit-exact.
Volume4D crop(const Volume4D& v, const RoiBox& box);

// Catmull-Rom bicubic resampling (a = -0.5) with replicate edge handling.
// Source coordinates follow the align-corners mapping
//   src = dst * (S_src - 1) / (S_dst - 1),
// which is exact at integer-coincident sample points when the scale is 1.
// Source extents must be >= 2 and target extents >= 1.
Image2D resample_bicubic(const Image2D& src, int target_h, int target_w);

/// Smallest extents >= the input that are multiples of m.
std::pair<int, int> fit_to_multiple(int h, int w, int m);

// Apply a box: crop, then per-slice bicubic resample to the box's target
// shape, then min-max renormalize. When the target equals the crop shape
// the resample and renormalize are skipped and the crop is returned
// bit-exact.
Volume4D apply_roi(const Volume4D& v, const RoiBox& box,
                   float epsilon = kDefaultEpsilon);

/// Same geometry for binary masks: bicubic on the 0/1 field, re-binarized
/// at 0.5. No renormalization.
Mask4 apply_roi_mask(const Mask4& mask, const RoiBox& box);

/// box_from_focus + target fitting + apply_roi in one step.
std::pair<Volume4D, RoiBox> extract_roi(const Volume4D& v,
                                        const FocusResult& focus,
                                        const RoiConfig& config = {});

}  // namespace mfocus

#endif  // MFOCUS_ROI_HPP
