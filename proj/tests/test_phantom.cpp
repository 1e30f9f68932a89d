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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "mfocus/errors.hpp"
#include "mfocus/features.hpp"
#include "mfocus/phantom.hpp"

using namespace mfocus;

TEST_CASE("identical spec and seed give bit-identical phantoms") {
  PhantomSpec spec;
  spec.seed = 42;
  spec.noise_amplitude = 0.08f;
  const PhantomOutput a = generate(spec);
  const PhantomOutput b = generate(spec);
  CHECK(a.volume == b.volume);
  CHECK(a.myocardium == b.myocardium);
  CHECK(a.true_center == b.true_center);

  PhantomSpec other = spec;
  other.seed = 43;
  const PhantomOutput c = generate(other);
  CHECK(a.volume != c.volume);
}

TEST_CASE("a motionless noiseless phantom has zero motion energy") {
  PhantomSpec spec;
  spec.noise_amplitude = 0.0f;
  spec.inner_systole = spec.inner_diastole;
  spec.outer_systole = spec.outer_diastole;
  const PhantomOutput out = generate(spec);
  const Volume3D e = motion_energy(out.volume);
  for (float v : e.values()) CHECK(v == 0.0f);
}

TEST_CASE("mask cardinality matches an independent per-voxel radius test") {
  PhantomSpec spec;
  spec.seed = 2;
  spec.noise_amplitude = 0.1f;
  const PhantomOutput out = generate(spec);
  const Dims4& d = spec.dims;
  for (int t = 0; t < d.t; ++t) {
    for (int z = 0; z < d.z; ++z) {
      // Recompute the instantaneous radii from the phantom parameters.
      const double relax =
          0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * t / d.t));
      const double taper = 1.0 - spec.apex_taper * z / (d.z - 1);
      const double inner =
          taper * (spec.inner_systole +
                   (spec.inner_diastole - spec.inner_systole) * relax);
      const double outer =
          taper * (spec.outer_systole +
                   (spec.outer_diastole - spec.outer_systole) * relax);
      std::size_t expected = 0;
      std::size_t got = 0;
      for (int y = 0; y < d.y; ++y)
        for (int x = 0; x < d.x; ++x) {
          const double r = std::hypot(x - static_cast<double>(spec.center.x),
                                      y - static_cast<double>(spec.center.y));
          if (r >= inner && r <= outer) ++expected;
          if (out.myocardium(t, z, y, x)) ++got;
        }
      CHECK(got == expected);
    }
  }
}

TEST_CASE("mask voxels lie between the instantaneous radii") {
  PhantomSpec spec;
  spec.seed = 4;
  const PhantomOutput out = generate(spec);
  const Dims4& d = spec.dims;
  for (int t = 0; t < d.t; t += 3)
    for (int z = 0; z < d.z; z += 2) {
      const RingRadii radii = phantom_radii(spec, t, z);
      for (int y = 0; y < d.y; ++y)
        for (int x = 0; x < d.x; ++x)
          if (out.myocardium(t, z, y, x)) {
            const double r =
                std::hypot(x - static_cast<double>(spec.center.x),
                           y - static_cast<double>(spec.center.y));
            CHECK(r >= radii.inner);
            CHECK(r <= radii.outer);
          }
    }
}

TEST_CASE("low noise keeps the intensity histogram trimodal") {
  PhantomSpec spec;
  spec.seed = 6;
  spec.noise_amplitude = 0.05f;  // < half of the smallest level gap (0.35/2)
  const PhantomOutput out = generate(spec);
  std::size_t near_bg = 0, near_myo = 0, near_blood = 0, stray = 0;
  for (float v : out.volume.values()) {
    if (std::abs(v - spec.intensity_background) <= spec.noise_amplitude)
      ++near_bg;
    else if (std::abs(v - spec.intensity_myocardium) <= spec.noise_amplitude)
      ++near_myo;
    else if (std::abs(v - spec.intensity_blood) <= spec.noise_amplitude)
      ++near_blood;
    else
      ++stray;
  }
  CHECK(stray == 0);
  CHECK(near_bg > 0);
  CHECK(near_myo > 0);
  CHECK(near_blood > 0);
}

TEST_CASE("phantom spec invariants are enforced") {
  PhantomSpec bad;
  bad.inner_diastole = 25.0f;  // inner >= outer
  bad.outer_diastole = 20.0f;
  CHECK_THROWS_AS(generate(bad), UsageError);

  PhantomSpec huge;
  huge.outer_diastole = 40.0f;  // >= min(H,W)/2
  CHECK_THROWS_AS(generate(huge), UsageError);

  PhantomSpec swollen;
  swollen.inner_systole = 14.0f;  // systole larger than diastole
  CHECK_THROWS_AS(generate(swollen), UsageError);

  PhantomSpec short_seq;
  short_seq.dims.t = 3;
  CHECK_THROWS_AS(generate(short_seq), UsageError);

  PhantomSpec taper;
  taper.apex_taper = 1.0f;
  CHECK_THROWS_AS(generate(taper), UsageError);
}

TEST_CASE("phantom noise is a pure function of its key") {
  CHECK(phantom_noise(1, 2, 3, 4, 5) == phantom_noise(1, 2, 3, 4, 5));
  CHECK(phantom_noise(1, 2, 3, 4, 5) != phantom_noise(2, 2, 3, 4, 5));
  for (int i = 0; i < 100; ++i) {
    const float u = phantom_noise(9, i, i * 3, i * 7, i * 11);
    CHECK(u >= -1.0f);
    CHECK(u < 1.0f);
  }
}
