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

#ifndef MFOCUS_PHANTOM_HPP
#define MFOCUS_PHANTOM_HPP

#include <cstdint>

#include "mfocus/volume.hpp"

namespace mfocus {

// Synthetic beating-annulus phantom: a short-axis ventricle ring that
// contracts and relaxes sinusoidally over one cycle, with the ring radius
// tapering toward the apex (higher z). Identical spec + seed always gives
// bit-identical output.
struct PhantomSpec {
  Dims4 dims{12, 8, 64, 64};  // (T, Z, H, W)
  Coord center{32.0f, 32.0f, 4.0f};

  // Ring radii in voxels at full relaxation (diastole) and peak
  // contraction (systole).
  float inner_diastole = 12.0f;
  float outer_diastole = 20.0f;
  float inner_systole = 8.0f;
  float outer_systole = 15.0f;

  float intensity_background = 0.2f;
  float intensity_myocardium = 0.55f;
  float intensity_blood = 0.9f;

  float noise_amplitude = 0.02f;
  float apex_taper = 0.3f;  // fraction of radius lost at the last slice
  std::uint64_t seed = 1;
  Spacing spacing{1.25f, 1.25f, 8.0f, 1.0f};
};

struct PhantomOutput {
  Volume4D volume;
  Mask4 myocardium;   // ring voxels per frame
  Coord true_center;  // as specified
};

/// Instantaneous ring radii for frame t, slice z.
struct RingRadii {
  double inner = 0.0;
  double outer = 0.0;
};
RingRadii phantom_radii(const PhantomSpec& spec, int t, int z);

/// Deterministic noise sample in [-1, 1) keyed by (seed, t, z, y, x).
float phantom_noise(std::uint64_t seed, int t, int z, int y, int x);

PhantomOutput generate(const PhantomSpec& spec);

}  // namespace mfocus

#endif  // MFOCUS_PHANTOM_HPP
