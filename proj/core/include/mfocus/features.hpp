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

#ifndef MFOCUS_FEATURES_HPP
#define MFOCUS_FEATURES_HPP

#include <array>
#include <cstdint>

#include "mfocus/tensor_ops.hpp"
#include "mfocus/volume.hpp"

namespace mfocus {

/// Which frame feeds the static (mean/std) features.
enum class StaticFrame { kFirst, kTimeMean };

/// 3x3x3 averaging kernel, every entry 1/27.
Kernel3 mean_kernel3();
/// Same kernel arranged 1x3x3x3 for 4D convolution (no temporal extent).
Kernel4 mean_kernel4();

/// Temporal derivative taps (-1, 0, +1) arranged 3x1x1x1.
Kernel4 temporal_sobel_kernel();

/// Static visual maps and the motion-energy map, all (z,y,x).
struct FeatureMaps {
  Volume3D mean;
  Volume3D stddev;
  Volume3D motion;
  int source_frame = 0;          // -1 when the time-mean frame was used
  std::int64_t std_clamped = 0;  // negatives zeroed before the square root
};

/// Windowed 3x3x3 arithmetic mean under replicate boundary.
Volume3D mean_image(const Volume3D& frame);

/// Windowed standard deviation: sqrt of the 3x3x3 mean of squared
/// deviations from `mean`. Tiny negatives from rounding are clamped to 0;
/// the count is reported through `clamped` when given.
Volume3D std_image(const Volume3D& frame, const Volume3D& mean,
                   std::int64_t* clamped = nullptr);

/// Root-mean-square temporal derivative per voxel:
///   sqrt( (1/T) * sum_t [ (I * S_t)(t,z,y,x) ]^2 )
/// Requires T >= 3.
Volume3D motion_energy(const Volume4D& v,
                       Boundary temporal_boundary = Boundary::kPeriodic);

/// Separable Gaussian blur. The kernel is truncated at +-3*sigma (capped so
/// it never exceeds an axis extent) and renormalized to unit sum. sigma = 0
/// is the identity.
Volume3D gaussian_smooth(const Volume3D& map, float sigma,
                         Boundary boundary = Boundary::kReplicate);

/// Mean/std of the chosen static frame plus the motion-energy map.
FeatureMaps compute_features(const Volume4D& normalized,
                             StaticFrame static_frame = StaticFrame::kFirst,
                             Boundary temporal_boundary = Boundary::kPeriodic);

/// Per-voxel average over all frames.
Volume3D time_mean_frame(const Volume4D& v);

}  // namespace mfocus

#endif  // MFOCUS_FEATURES_HPP
