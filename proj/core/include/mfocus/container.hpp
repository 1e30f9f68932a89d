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

#ifndef MFOCUS_CONTAINER_HPP
#define MFOCUS_CONTAINER_HPP

#include <string>

#include "mfocus/volume.hpp"

namespace mfocus {

// Simple tensor container (.t4d/.t3d): a text header followed by raw
// little-endian float32 payload in row-major order.
//
//   T4D1\n
//   axes=t,z,y,x\n            (or z,y,x for 3D)
//   dims=12,8,64,64\n
//   dtype=f32le\n
//   spacing=1.25,1.25,8,1\n   (sx,sy,sz,dt; 4D only)
//   data\n
//   <payload>
//
// Round trips are bit-exact.

void write_container(const std::string& path, const Volume4D& v);
void write_container(const std::string& path, const Volume3D& v);

Volume4D read_container4(const std::string& path);
Volume3D read_container3(const std::string& path);

}  // namespace mfocus

#endif  // MFOCUS_CONTAINER_HPP
