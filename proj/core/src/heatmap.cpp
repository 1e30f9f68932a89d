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

#include "mfocus/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include "mfocus/errors.hpp"
#include "mfocus/tensor_ops.hpp"

namespace mfocus {

void write_heatmap(const Volume3D& map, int z, const std::string& path) {
  const Dims3& d = map.dims();
  if (map.empty()) throw DataError("heatmap of an empty volume");
  if (z < 0 || z >= d.z) throw UsageError("heatmap slice index out of range");

  float lo = map(z, 0, 0);
  float hi = lo;
  for (int y = 0; y < d.y; ++y) {
    for (int x = 0; x < d.x; ++x) {
      lo = std::min(lo, map(z, y, x));
      hi = std::max(hi, map(z, y, x));
    }
  }

  // Per-slice min-max scaling; the epsilon guard sends a constant slice to
  // full intensity.
  const float denom = hi - lo + kDefaultEpsilon;
  std::vector<unsigned char> pixels(static_cast<std::size_t>(d.y) * d.x);
  std::size_t i = 0;
  for (int y = 0; y < d.y; ++y) {
    for (int x = 0; x < d.x; ++x) {
      const float s = (map(z, y, x) - lo + kDefaultEpsilon) / denom;
      const int v = static_cast<int>(std::lround(255.0f * s));
      pixels[i++] = static_cast<unsigned char>(std::clamp(v, 0, 255));
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << "P5\n" << d.x << ' ' << d.y << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace mfocus
