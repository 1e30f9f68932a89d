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

#ifndef MFOCUS_MANIFEST_HPP
#define MFOCUS_MANIFEST_HPP

#include <string>
#include <vector>

#include "mfocus/focus.hpp"
#include "mfocus/roi.hpp"
#include "mfocus/volume.hpp"

namespace mfocus {

/// Everything that parameterizes a pipeline run. Hashed into the config
/// digest embedded in manifests and reports.
struct PipelineConfig {
  FocusConfig focus;
  RoiConfig roi;
  int min_pixels = 25;
  float segment_percentile = 0.7f;

  /// Canonical key=value serialization (digest input).
  std::string canonical() const;
  /// FNV-1a 64-bit digest of canonical(), as 16 hex digits.
  std::string digest() const;
};

/// One localized input.
struct RoiRecord {
  std::string source;
  Dims4 source_dims;
  Spacing spacing;
  RoiBox box;
  Coord center;
  float scale = 0.0f;
  float threshold = 0.0f;
  bool fallback = false;
};

struct RoiManifest {
  std::string config_digest;
  std::vector<RoiRecord> records;
};

std::string to_json(const RoiManifest& manifest);
RoiManifest manifest_from_json(const std::string& text);

void save_manifest(const std::string& path, const RoiManifest& manifest);
RoiManifest load_manifest(const std::string& path);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace mfocus

#endif  // MFOCUS_MANIFEST_HPP
