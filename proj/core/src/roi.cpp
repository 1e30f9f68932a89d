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

#include "mfocus/roi.hpp"

#include <algorithm>
#include <cmath>

#include "mfocus/errors.hpp"
#include "mfocus/tensor_ops.hpp"

namespace mfocus {

namespace {

AxisRange axis_box(double center, double half, int extent) {
  int lo = static_cast<int>(std::floor(center - half));
  int hi = static_cast<int>(std::ceil(center + half));
  // Always keep the voxel nearest the center inside the box.
  const int nearest =
      std::clamp(static_cast<int>(std::lround(center)), 0, extent - 1);
  lo = std::min(lo, nearest);
  hi = std::max(hi, nearest + 1);
  lo = std::max(lo, 0);
  hi = std::min(hi, extent);
  return {lo, hi};
}

void check_box(const RoiBox& box, Dims3 dims) {
  const bool ok = box.x.lo >= 0 && box.x.lo < box.x.hi && box.x.hi <= dims.x &&
                  box.y.lo >= 0 && box.y.lo < box.y.hi && box.y.hi <= dims.y &&
                  box.z.lo >= 0 && box.z.lo < box.z.hi && box.z.hi <= dims.z;
  if (!ok) throw Error("roi box out of bounds or empty");
}

// Catmull-Rom weights for fractional offset t in [0, 1).
inline void catmull_rom_weights(double t, double w[4]) noexcept {
  const double t2 = t * t;
  const double t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
  w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
  w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}

inline double map_coord(int dst, int dst_n, int src_n) noexcept {
  if (dst_n <= 1) return 0.0;
  return static_cast<double>(dst) * (src_n - 1) / (dst_n - 1);
}

// One separable pass along the fastest axis of a row-major field.
void resample_rows(const float* src, int rows, int src_w, float* dst,
                   int dst_w) {
  for (int r = 0; r < rows; ++r) {
    const float* in = src + static_cast<std::size_t>(r) * src_w;
    float* out = dst + static_cast<std::size_t>(r) * dst_w;
    for (int x = 0; x < dst_w; ++x) {
      const double s = map_coord(x, dst_w, src_w);
      const int base = static_cast<int>(std::floor(s));
      double w[4];
      catmull_rom_weights(s - base, w);
      double acc = 0.0;
      for (int i = 0; i < 4; ++i) {
        const int sx = std::clamp(base - 1 + i, 0, src_w - 1);
        acc += w[i] * in[sx];
      }
      out[x] = static_cast<float>(acc);
    }
  }
}

}  // namespace

RoiBox box_from_focus(const FocusResult& focus, float k) {
  if (!(k > 0.0f)) throw UsageError("radius multiplier k must be positive");
  const Dims3 dims = focus.fused.dims();
  if (!dims.positive()) throw Error("focus result carries no grid");
  const Coord r_max = max_coord(dims);
  const double half_x = static_cast<double>(k) * focus.scale * r_max.x;
  const double half_y = static_cast<double>(k) * focus.scale * r_max.y;
  const double half_z = static_cast<double>(k) * focus.scale * r_max.z;

  RoiBox box;
  box.x = axis_box(focus.center.x, half_x, dims.x);
  box.y = axis_box(focus.center.y, half_y, dims.y);
  box.z = axis_box(focus.center.z, half_z, dims.z);
  box.source = dims;
  check_box(box, dims);
  return box;
}

Volume4D crop(const Volume4D& v, const RoiBox& box) {
  const Dims4& d = v.dims();
  check_box(box, d.spatial());
  Dims4 cd{d.t, box.z.extent(), box.y.extent(), box.x.extent()};
  Volume4D out(cd, 0.0f, v.spacing());
  for (int t = 0; t < d.t; ++t)
    for (int z = 0; z < cd.z; ++z)
      for (int y = 0; y < cd.y; ++y)
        for (int x = 0; x < cd.x; ++x)
          out(t, z, y, x) = v(t, box.z.lo + z, box.y.lo + y, box.x.lo + x);
  return out;
}

Image2D resample_bicubic(const Image2D& src, int target_h, int target_w) {
  if (src.h < 2 || src.w < 2)
    throw Error("resample source extents must be >= 2");
  if (target_h < 1 || target_w < 1)
    throw Error("resample target extents must be >= 1");

  // Horizontal pass, then vertical on the transposed intermediate.
  std::vector<float> mid(static_cast<std::size_t>(src.h) * target_w);
  resample_rows(src.data.data(), src.h, src.w, mid.data(), target_w);

  std::vector<float> mid_t(static_cast<std::size_t>(target_w) * src.h);
  for (int y = 0; y < src.h; ++y)
    for (int x = 0; x < target_w; ++x)
      mid_t[static_cast<std::size_t>(x) * src.h + y] =
          mid[static_cast<std::size_t>(y) * target_w + x];

  std::vector<float> out_t(static_cast<std::size_t>(target_w) * target_h);
  resample_rows(mid_t.data(), target_w, src.h, out_t.data(), target_h);

  Image2D out{target_h, target_w,
              std::vector<float>(static_cast<std::size_t>(target_h) * target_w)};
  for (int x = 0; x < target_w; ++x)
    for (int y = 0; y < target_h; ++y)
      out.at(y, x) = out_t[static_cast<std::size_t>(x) * target_h + y];
  return out;
}

std::pair<int, int> fit_to_multiple(int h, int w, int m) {
  if (m < 1) throw UsageError("multiple must be >= 1");
  auto up = [m](int v) { return ((v + m - 1) / m) * m; };
  return {up(h), up(w)};
}

Volume4D apply_roi(const Volume4D& v, const RoiBox& box, float epsilon) {
  Volume4D cropped = crop(v, box);
  const Dims4& cd = cropped.dims();
  if ((box.target_h == 0 && box.target_w == 0) ||
      (box.target_h == cd.y && box.target_w == cd.x))
    return cropped;
  if (box.target_h < 1 || box.target_w < 1)
    throw Error("roi target shape must be positive");

  Dims4 od{cd.t, cd.z, box.target_h, box.target_w};
  Spacing sp = cropped.spacing();
  sp.sx *= static_cast<float>(cd.x) / box.target_w;
  sp.sy *= static_cast<float>(cd.y) / box.target_h;
  Volume4D out(od, 0.0f, sp);
  Image2D slice{cd.y, cd.x, std::vector<float>(static_cast<std::size_t>(cd.y) * cd.x)};
  for (int t = 0; t < cd.t; ++t) {
    for (int z = 0; z < cd.z; ++z) {
      for (int y = 0; y < cd.y; ++y)
        for (int x = 0; x < cd.x; ++x) slice.at(y, x) = cropped(t, z, y, x);
      Image2D r = resample_bicubic(slice, box.target_h, box.target_w);
      for (int y = 0; y < od.y; ++y)
        for (int x = 0; x < od.x; ++x) out(t, z, y, x) = r.at(y, x);
    }
  }
  // Catmull-Rom overshoots; bring intensities back to (0, 1].
  return normalize(out, epsilon);
}

Mask4 apply_roi_mask(const Mask4& mask, const RoiBox& box) {
  Volume4D field = to_volume(mask);
  Volume4D cropped = crop(field, box);
  const Dims4& cd = cropped.dims();
  if ((box.target_h == 0 && box.target_w == 0) ||
      (box.target_h == cd.y && box.target_w == cd.x))
    return to_mask(cropped, 0.5f);

  Dims4 od{cd.t, cd.z, box.target_h, box.target_w};
  Mask4 out(od);
  Image2D slice{cd.y, cd.x, std::vector<float>(static_cast<std::size_t>(cd.y) * cd.x)};
  for (int t = 0; t < cd.t; ++t) {
    for (int z = 0; z < cd.z; ++z) {
      for (int y = 0; y < cd.y; ++y)
        for (int x = 0; x < cd.x; ++x) slice.at(y, x) = cropped(t, z, y, x);
      Image2D r = resample_bicubic(slice, box.target_h, box.target_w);
      for (int y = 0; y < od.y; ++y)
        for (int x = 0; x < od.x; ++x)
          out(t, z, y, x) = r.at(y, x) > 0.5f ? 1 : 0;
    }
  }
  return out;
}

std::pair<Volume4D, RoiBox> extract_roi(const Volume4D& v,
                                        const FocusResult& focus,
                                        const RoiConfig& config) {
  if (focus.fused.dims() != v.dims().spatial())
    throw Error("focus result does not match the volume's spatial dims");
  RoiBox box = box_from_focus(focus, config.k);
  int th = config.target_h;
  int tw = config.target_w;
  if (config.enforce_multiple)
    std::tie(th, tw) = fit_to_multiple(th, tw, config.multiple);
  box.target_h = th;
  box.target_w = tw;
  return {apply_roi(v, box, config.epsilon), box};
}

}  // namespace mfocus
