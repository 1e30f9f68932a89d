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

#include "mfocus/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfocus/errors.hpp"

namespace mfocus {

namespace {

// Index of an extended sample, or -1 when the zero policy drops it.
inline int map_index(int i, int n, Boundary b) noexcept {
  if (i >= 0 && i < n) return i;
  switch (b) {
    case Boundary::kReplicate:
      return i < 0 ? 0 : n - 1;
    case Boundary::kZero:
      return -1;
    case Boundary::kPeriodic: {
      int m = i % n;
      return m < 0 ? m + n : m;
    }
  }
  return -1;
}

struct MinMax {
  float lo;
  float hi;
};

MinMax finite_min_max(std::span<const float> values) {
  if (values.empty()) throw DataError("cannot normalize an empty volume");
  float lo = values[0];
  float hi = values[0];
  for (float v : values) {
    if (!std::isfinite(v))
      throw DataError("non-finite value encountered in input volume");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

void normalize_span(std::span<const float> in, std::span<float> out,
                    float epsilon) {
  if (!(epsilon > 0.0f)) throw UsageError("epsilon must be positive");
  const MinMax mm = finite_min_max(in);
  const float denom = mm.hi - mm.lo + epsilon;
  for (std::size_t i = 0; i < in.size(); ++i)
    out[i] = (in[i] - mm.lo + epsilon) / denom;
}

void check_kernel_extent(int kd, int vd) {
  if (kd < 1 || kd % 2 == 0) throw Error("kernel extents must be odd");
  if (kd > vd) throw Error("kernel larger than the volume along an axis");
}

}  // namespace

Volume4D normalize(const Volume4D& v, float epsilon) {
  if (v.empty()) throw DataError("cannot normalize an empty volume");
  Volume4D out(v.dims(), 0.0f, v.spacing());
  normalize_span(v.values(), out.values(), epsilon);
  return out;
}

Volume3D normalize(const Volume3D& v, float epsilon) {
  if (v.empty()) throw DataError("cannot normalize an empty volume");
  Volume3D out(v.dims());
  normalize_span(v.values(), out.values(), epsilon);
  return out;
}

Volume3D convolve(const Volume3D& v, const Kernel3& kernel, Boundary boundary) {
  const Dims3& d = v.dims();
  const Dims3& kd = kernel.dims;
  check_kernel_extent(kd.z, d.z);
  check_kernel_extent(kd.y, d.y);
  check_kernel_extent(kd.x, d.x);
  if (kernel.weights.size() != kd.voxels())
    throw Error("kernel weight count does not match its extents");

  const int rz = kd.z / 2, ry = kd.y / 2, rx = kd.x / 2;
  Volume3D out(d);
  for (int z = 0; z < d.z; ++z) {
    for (int y = 0; y < d.y; ++y) {
      for (int x = 0; x < d.x; ++x) {
        double acc = 0.0;
        for (int kz = 0; kz < kd.z; ++kz) {
          const int sz = map_index(z + rz - kz, d.z, boundary);
          if (sz < 0) continue;
          for (int ky = 0; ky < kd.y; ++ky) {
            const int sy = map_index(y + ry - ky, d.y, boundary);
            if (sy < 0) continue;
            for (int kx = 0; kx < kd.x; ++kx) {
              const int sx = map_index(x + rx - kx, d.x, boundary);
              if (sx < 0) continue;
              acc += kernel.at(kz, ky, kx) * v(sz, sy, sx);
            }
          }
        }
        out(z, y, x) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

Volume4D convolve(const Volume4D& v, const Kernel4& kernel, Boundary boundary) {
  const Dims4& d = v.dims();
  const Dims4& kd = kernel.dims;
  check_kernel_extent(kd.t, d.t);
  check_kernel_extent(kd.z, d.z);
  check_kernel_extent(kd.y, d.y);
  check_kernel_extent(kd.x, d.x);
  if (kernel.weights.size() != kd.voxels())
    throw Error("kernel weight count does not match its extents");

  const int rt = kd.t / 2, rz = kd.z / 2, ry = kd.y / 2, rx = kd.x / 2;
  Volume4D out(d, 0.0f, v.spacing());
  for (int t = 0; t < d.t; ++t) {
    for (int z = 0; z < d.z; ++z) {
      for (int y = 0; y < d.y; ++y) {
        for (int x = 0; x < d.x; ++x) {
          double acc = 0.0;
          for (int kt = 0; kt < kd.t; ++kt) {
            const int st = map_index(t + rt - kt, d.t, boundary);
            if (st < 0) continue;
            for (int kz = 0; kz < kd.z; ++kz) {
              const int sz = map_index(z + rz - kz, d.z, boundary);
              if (sz < 0) continue;
              for (int ky = 0; ky < kd.y; ++ky) {
                const int sy = map_index(y + ry - ky, d.y, boundary);
                if (sy < 0) continue;
                for (int kx = 0; kx < kd.x; ++kx) {
                  const int sx = map_index(x + rx - kx, d.x, boundary);
                  if (sx < 0) continue;
                  acc += kernel.at(kt, kz, ky, kx) * v(st, sz, sy, sx);
                }
              }
            }
          }
          out(t, z, y, x) = static_cast<float>(acc);
        }
      }
    }
  }
  return out;
}

float quantile(std::span<const float> values, double p) {
  if (values.empty()) throw Error("quantile of an empty collection");
  if (p < 0.0 || p > 1.0) throw UsageError("quantile fraction must be in [0, 1]");
  const std::size_t n = values.size();
  // Nearest rank: k-th smallest with k = ceil(p*N); one ulp of slack so an
  // exactly-representable integer product is not pushed to the next rank.
  const double pn = std::nextafter(p * static_cast<double>(n), 0.0);
  std::size_t k = static_cast<std::size_t>(std::ceil(pn));
  k = std::clamp<std::size_t>(k, 1, n);
  std::vector<float> work(values.begin(), values.end());
  std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   work.end());
  return work[k - 1];
}

Volume3D hadamard_pow(const Volume3D& v, float exponent) {
  Volume3D out(v.dims());
  auto in = v.values();
  auto dst = out.values();
  if (exponent == 1.0f) {
    std::copy(in.begin(), in.end(), dst.begin());
    return out;
  }
  if (exponent == 2.0f) {
    for (std::size_t i = 0; i < in.size(); ++i) dst[i] = in[i] * in[i];
    return out;
  }
  const bool fractional = exponent != std::floor(exponent);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (fractional && in[i] < 0.0f)
      throw Error("negative base with fractional exponent");
    dst[i] = exponent == 0.5f ? std::sqrt(in[i]) : std::pow(in[i], exponent);
  }
  return out;
}

}  // namespace mfocus
