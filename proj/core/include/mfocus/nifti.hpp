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

#ifndef MFOCUS_NIFTI_HPP
#define MFOCUS_NIFTI_HPP

#include <string>

#include "mfocus/volume.hpp"

namespace mfocus {

// NIfTI-1 reader, single-file form (.nii, optionally gzip-compressed).
// Supported element types: int16, uint16, float32. Header dims (x,y,z,t)
// are transposed to the internal (t,z,y,x) order; spacing comes from
// pixdim and values are rescaled by scl_slope/scl_inter when scl_slope is
// nonzero. Byte-swapped files are handled.
Volume4D read_nifti(const std::string& path);

}  // namespace mfocus

#endif  // MFOCUS_NIFTI_HPP
