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

#include "mfocus/phantom.hpp"

#include <cmath>
#include <numbers>

#include "mfocus/errors.hpp"

namespace mfocus {

namespace {

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void validate(const PhantomSpec& spec) {
  if (!spec.dims.positive()) throw UsageError("phantom extents must be >= 1");
  if (spec.dims.t < 4) throw UsageError("phantom needs at least 4 frames");
  const float half = 0.5f * static_cast<float>(std::min(spec.dims.y, spec.dims.x));
  auto ring_ok = [half](float inner, float outer) {
    return 0.0f < inner && inner < outer && outer < half;
  };
  if (!ring_ok(spec.inner_diastole, spec.outer_diastole) ||
      !ring_ok(spec.inner_systole, spec.outer_systole))
    throw UsageError("ring radii must satisfy 0 < inner < outer < min(H,W)/2");
  if (spec.inner_systole > spec.inner_diastole ||
      spec.outer_systole > spec.outer_diastole)
    throw UsageError("systolic radii must not exceed diastolic radii");
  if (spec.noise_amplitude < 0.0f)
    throw UsageError("noise amplitude must be >= 0");
  if (spec.apex_taper < 0.0f || spec.apex_taper >= 1.0f)
    throw UsageError("apex taper must lie in [0, 1)");
  if (!spec.spacing.positive())
    throw UsageError("phantom spacing must be positive");
}

}  // namespace

float phantom_noise(std::uint64_t seed, int t, int z, int y, int x) {
  std::uint64_t h = mix64(seed ^ 0x243F6A8885A308D3ull);
  h = mix64(h ^ static_cast<std::uint64_t>(t));
  h = mix64(h ^ static_cast<std::uint64_t>(z));
  h = mix64(h ^ static_cast<std::uint64_t>(y));
  h = mix64(h ^ static_cast<std::uint64_t>(x));
  // Top 24 bits -> [0,1), then to [-1,1). Integer path keeps this
  // bit-identical across platforms.
  const float u = static_cast<float>(h >> 40) * 0x1p-24f;
  return 2.0f * u - 1.0f;
}

RingRadii phantom_radii(const PhantomSpec& spec, int t, int z) {
  // Sinusoidal contraction over one full cycle: diastole at t = 0,
  // systole at t = T/2.
  const double phase =
      2.0 * std::numbers::pi * static_cast<double>(t) / spec.dims.t;
  const double relax = 0.5 * (1.0 + std::cos(phase));
  const double taper =
      spec.dims.z > 1
          ? 1.0 - static_cast<double>(spec.apex_taper) * z / (spec.dims.z - 1)
          : 1.0;
  RingRadii r;
  r.inner = taper * (spec.inner_systole +
                     (spec.inner_diastole - spec.inner_systole) * relax);
  r.outer = taper * (spec.outer_systole +
                     (spec.outer_diastole - spec.outer_systole) * relax);
  return r;
}

PhantomOutput generate(const PhantomSpec& spec) {
  validate(spec);
  const Dims4& d = spec.dims;

  PhantomOutput out;
  out.volume = Volume4D(d, 0.0f, spec.spacing);
  out.myocardium = Mask4(d);
  out.true_center = spec.center;

  for (int t = 0; t < d.t; ++t) {
    for (int z = 0; z < d.z; ++z) {
      const RingRadii radii = phantom_radii(spec, t, z);
      for (int y = 0; y < d.y; ++y) {
        const double dy = y - static_cast<double>(spec.center.y);
        for (int x = 0; x < d.x; ++x) {
          const double dx = x - static_cast<double>(spec.center.x);
          const double r = std::sqrt(dx * dx + dy * dy);
          float value;
          if (r < radii.inner) {
            value = spec.intensity_blood;
          } else if (r <= radii.outer) {
            value = spec.intensity_myocardium;
            out.myocardium(t, z, y, x) = 1;
          } else {
            value = spec.intensity_background;
          }
          if (spec.noise_amplitude > 0.0f)
            value += spec.noise_amplitude *
                     phantom_noise(spec.seed, t, z, y, x);
          out.volume(t, z, y, x) = value;
        }
      }
    }
  }
  return out;
}

}  // namespace mfocus
