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

#ifndef MFOCUS_TENSOR_OPS_HPP
#define MFOCUS_TENSOR_OPS_HPP

#include <span>
#include <vector>

#include "mfocus/volume.hpp"

namespace mfocus {

/// Out-of-grid extension policy for convolutions.
enum class Boundary { kReplicate, kZero, kPeriodic };

/// Guard constant of the min-max normalization; avoids division by zero
/// on constant inputs.
inline constexpr float kDefaultEpsilon = 1e-7f;

/// Small dense convolution kernel over (z,y,x). Extents must be odd.
/// Weights are kept in double so unit-sum kernels sum to 1 within 1e-9.
struct Kernel3 {
  Dims3 dims;
  std::vector<double> weights;

  double at(int z, int y, int x) const noexcept {
    return weights[(static_cast<std::size_t>(z) * dims.y + y) * dims.x + x];
  }
};

/// Small dense convolution kernel over (t,z,y,x).
struct Kernel4 {
  Dims4 dims;
  std::vector<double> weights;

  double at(int t, int z, int y, int x) const noexcept {
    return weights[((static_cast<std::size_t>(t) * dims.z + z) * dims.y + y) *
                       dims.x +
                   x];
  }
};

// Min-max intensity normalization:
//   out = (v - min(v) + eps) / (max(v) - min(v) + eps)
// Order-preserving; outputs lie in (0, 1]; a constant input maps to 1.
// Throws DataError if any value is non-finite.
Volume4D normalize(const Volume4D& v, float epsilon = kDefaultEpsilon);
Volume3D normalize(const Volume3D& v, float epsilon = kDefaultEpsilon);

// True (flipped) convolution: out[p] = sum_k kernel[k] * v[p - k], with the
// chosen boundary extension. Output shape equals input shape. Kernel extents
// must be odd and no larger than the volume along each axis.
Volume3D convolve(const Volume3D& v, const Kernel3& kernel,
                  Boundary boundary = Boundary::kReplicate);
Volume4D convolve(const Volume4D& v, const Kernel4& kernel,
                  Boundary boundary = Boundary::kReplicate);

/// Nearest-rank quantile: the ceil(p*N)-th smallest value; p=0 returns the
/// minimum. The result is always an element of the collection.
float quantile(std::span<const float> values, double p);

/// Element-wise power. Negative bases with fractional exponents are
/// rejected.
Volume3D hadamard_pow(const Volume3D& v, float exponent);

}  // namespace mfocus

#endif  // MFOCUS_TENSOR_OPS_HPP
