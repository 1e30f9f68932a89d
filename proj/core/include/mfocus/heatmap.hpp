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

#ifndef MFOCUS_HEATMAP_HPP
#define MFOCUS_HEATMAP_HPP

#include <string>

#include "mfocus/volume.hpp"

namespace mfocus {

/// Write one z-slice as an 8-bit binary PGM (P5), min-max scaled per slice.
/// A constant slice maps to full intensity (255).
void write_heatmap(const Volume3D& map, int z, const std::string& path);

}  // namespace mfocus

#endif  // MFOCUS_HEATMAP_HPP
