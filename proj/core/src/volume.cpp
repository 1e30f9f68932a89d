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

#include "mfocus/volume.hpp"

#include <algorithm>
#include <numeric>

#include "mfocus/errors.hpp"

namespace mfocus {

namespace {

void require_positive(const Dims3& d) {
  if (!d.positive()) throw DataError("volume extents must all be >= 1");
}

void require_positive(const Dims4& d) {
  if (!d.positive()) throw DataError("volume extents must all be >= 1");
}

void require_spacing(const Spacing& s) {
  if (!s.positive()) throw DataError("voxel spacing must be strictly positive");
}

}  // namespace

Volume3D::Volume3D(Dims3 dims, float fill) : dims_(dims) {
  require_positive(dims);
  data_.assign(dims.voxels(), fill);
}

Volume3D::Volume3D(Dims3 dims, std::vector<float> data)
    : dims_(dims), data_(std::move(data)) {
  require_positive(dims);
  if (data_.size() != dims.voxels())
    throw DataError("data length does not match volume extents");
}

Volume4D::Volume4D(Dims4 dims, float fill, Spacing spacing)
    : dims_(dims), spacing_(spacing) {
  require_positive(dims);
  require_spacing(spacing);
  data_.assign(dims.voxels(), fill);
}

Volume4D::Volume4D(Dims4 dims, std::vector<float> data, Spacing spacing)
    : dims_(dims), spacing_(spacing), data_(std::move(data)) {
  require_positive(dims);
  require_spacing(spacing);
  if (data_.size() != dims.voxels())
    throw DataError("data length does not match volume extents");
}

Volume3D Volume4D::frame(int t) const {
  if (t < 0 || t >= dims_.t) throw Error("frame index out of range");
  const std::size_t n = dims_.spatial().voxels();
  std::vector<float> out(data_.begin() + static_cast<std::ptrdiff_t>(t * n),
                         data_.begin() + static_cast<std::ptrdiff_t>((t + 1) * n));
  return Volume3D(dims_.spatial(), std::move(out));
}

Mask3::Mask3(Dims3 dims, std::uint8_t fill) : dims_(dims) {
  require_positive(dims);
  data_.assign(dims.voxels(), fill);
}

std::size_t Mask3::count_set() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](std::uint8_t v) { return v != 0; }));
}

Mask4::Mask4(Dims4 dims, std::uint8_t fill) : dims_(dims) {
  require_positive(dims);
  data_.assign(dims.voxels(), fill);
}

std::size_t Mask4::count_set() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](std::uint8_t v) { return v != 0; }));
}

Mask3 Mask4::frame(int t) const {
  if (t < 0 || t >= dims_.t) throw Error("frame index out of range");
  Mask3 out(dims_.spatial());
  const std::size_t n = dims_.spatial().voxels();
  std::copy(data_.begin() + static_cast<std::ptrdiff_t>(t * n),
            data_.begin() + static_cast<std::ptrdiff_t>((t + 1) * n),
            out.values().begin());
  return out;
}

Volume4D to_volume(const Mask4& mask, Spacing spacing) {
  Volume4D out(mask.dims(), 0.0f, spacing);
  auto src = mask.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 1.0f : 0.0f;
  return out;
}

Volume3D to_volume(const Mask3& mask) {
  Volume3D out(mask.dims());
  auto src = mask.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 1.0f : 0.0f;
  return out;
}

Mask4 to_mask(const Volume4D& v, float cut) {
  Mask4 out(v.dims());
  auto src = v.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > cut ? 1 : 0;
  return out;
}

}  // namespace mfocus
