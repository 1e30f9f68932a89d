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

#ifndef MFOCUS_VOLUME_HPP
#define MFOCUS_VOLUME_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mfocus {

// Internal axis order is (t,z,y,x) everywhere; file readers transpose at
// the boundary. x is the fastest-varying index.

struct Dims3 {
  int z = 0;
  int y = 0;
  int x = 0;

  std::size_t voxels() const noexcept {
    return static_cast<std::size_t>(z) * static_cast<std::size_t>(y) *
           static_cast<std::size_t>(x);
  }
  bool positive() const noexcept { return z >= 1 && y >= 1 && x >= 1; }
  bool operator==(const Dims3&) const = default;
};

struct Dims4 {
  int t = 0;
  int z = 0;
  int y = 0;
  int x = 0;

  Dims3 spatial() const noexcept { return {z, y, x}; }
  std::size_t voxels() const noexcept {
    return static_cast<std::size_t>(t) * spatial().voxels();
  }
  bool positive() const noexcept { return t >= 1 && spatial().positive(); }
  bool operator==(const Dims4&) const = default;
};

/// Per-axis physical voxel size in mm plus the (dimensionless) frame period.
struct Spacing {
  float sx = 1.0f;
  float sy = 1.0f;
  float sz = 1.0f;
  float dt = 1.0f;

  bool positive() const noexcept {
    return sx > 0.0f && sy > 0.0f && sz > 0.0f && dt > 0.0f;
  }
  bool operator==(const Spacing&) const = default;
};

/// Continuous position in voxel units.
struct Coord {
  float x = 0.0f;
  float y = 0.0f;
  float z = 0.0f;

  bool operator==(const Coord&) const = default;
};

/// Dense scalar grid indexed (z,y,x).
class Volume3D {
 public:
  Volume3D() = default;
  explicit Volume3D(Dims3 dims, float fill = 0.0f);
  Volume3D(Dims3 dims, std::vector<float> data);

  const Dims3& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::size_t index(int z, int y, int x) const noexcept {
    return (static_cast<std::size_t>(z) * dims_.y + y) * dims_.x + x;
  }
  float operator()(int z, int y, int x) const noexcept {
    return data_[index(z, y, x)];
  }
  float& operator()(int z, int y, int x) noexcept {
    return data_[index(z, y, x)];
  }

  std::span<const float> values() const noexcept { return data_; }
  std::span<float> values() noexcept { return data_; }

  bool operator==(const Volume3D&) const = default;

 private:
  Dims3 dims_{};
  std::vector<float> data_;
};

/// Dense scalar grid indexed (t,z,y,x) with voxel spacing metadata.
class Volume4D {
 public:
  Volume4D() = default;
  explicit Volume4D(Dims4 dims, float fill = 0.0f, Spacing spacing = {});
  Volume4D(Dims4 dims, std::vector<float> data, Spacing spacing = {});

  const Dims4& dims() const noexcept { return dims_; }
  const Spacing& spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::size_t index(int t, int z, int y, int x) const noexcept {
    return ((static_cast<std::size_t>(t) * dims_.z + z) * dims_.y + y) *
               dims_.x +
           x;
  }
  float operator()(int t, int z, int y, int x) const noexcept {
    return data_[index(t, z, y, x)];
  }
  float& operator()(int t, int z, int y, int x) noexcept {
    return data_[index(t, z, y, x)];
  }

  std::span<const float> values() const noexcept { return data_; }
  std::span<float> values() noexcept { return data_; }

  /// Copy of frame t as a 3D volume.
  Volume3D frame(int t) const;

  bool operator==(const Volume4D&) const = default;

 private:
  Dims4 dims_{};
  Spacing spacing_{};
  std::vector<float> data_;
};

/// Binary voxel mask over a 3D grid.
class Mask3 {
 public:
  Mask3() = default;
  explicit Mask3(Dims3 dims, std::uint8_t fill = 0);

  const Dims3& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::size_t index(int z, int y, int x) const noexcept {
    return (static_cast<std::size_t>(z) * dims_.y + y) * dims_.x + x;
  }
  std::uint8_t operator()(int z, int y, int x) const noexcept {
    return data_[index(z, y, x)];
  }
  std::uint8_t& operator()(int z, int y, int x) noexcept {
    return data_[index(z, y, x)];
  }

  std::span<const std::uint8_t> values() const noexcept { return data_; }
  std::span<std::uint8_t> values() noexcept { return data_; }

  std::size_t count_set() const noexcept;

  bool operator==(const Mask3&) const = default;

 private:
  Dims3 dims_{};
  std::vector<std::uint8_t> data_;
};

/// Binary voxel mask over a 4D grid (one 3D mask per frame).
class Mask4 {
 public:
  Mask4() = default;
  explicit Mask4(Dims4 dims, std::uint8_t fill = 0);

  const Dims4& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::size_t index(int t, int z, int y, int x) const noexcept {
    return ((static_cast<std::size_t>(t) * dims_.z + z) * dims_.y + y) *
               dims_.x +
           x;
  }
  std::uint8_t operator()(int t, int z, int y, int x) const noexcept {
    return data_[index(t, z, y, x)];
  }
  std::uint8_t& operator()(int t, int z, int y, int x) noexcept {
    return data_[index(t, z, y, x)];
  }

  std::span<const std::uint8_t> values() const noexcept { return data_; }
  std::span<std::uint8_t> values() noexcept { return data_; }

  std::size_t count_set() const noexcept;

  /// Copy of frame t.
  Mask3 frame(int t) const;

  bool operator==(const Mask4&) const = default;

 private:
  Dims4 dims_{};
  std::vector<std::uint8_t> data_;
};

/// Mask as a 0/1-valued float volume (for serialization).
Volume4D to_volume(const Mask4& mask, Spacing spacing = {});
Volume3D to_volume(const Mask3& mask);
/// Binarize a float volume at the given cut (strictly greater).
Mask4 to_mask(const Volume4D& v, float cut = 0.5f);

}  // namespace mfocus

#endif  // MFOCUS_VOLUME_HPP
