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

#ifndef MFOCUS_METRICS_HPP
#define MFOCUS_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mfocus/volume.hpp"

namespace mfocus {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

/// Segmentation evaluation summary. Optional fields (McNemar, timing) are
/// flagged by their `has_*` companions.
struct EvalReport {
  double recall = 0.0;
  double dice = 0.0;
  ConfusionCounts counts;

  bool has_mcnemar = false;
  double mcnemar_chi2 = 0.0;
  std::uint64_t discordant_b = 0;  // baseline correct, ours wrong
  std::uint64_t discordant_c = 0;  // baseline wrong, ours correct

  bool has_timing = false;
  double base_time_s = 0.0;
  double ours_time_s = 0.0;
  double speedup = 0.0;

  // Empty-mask conventions in effect (flagged so perfect trivial agreement
  // is visible as such).
  bool empty_label = false;
  bool both_empty = false;

  int slices_total = 0;
  int slices_kept = 0;
  int min_pixels = 0;

  std::string config_digest;

  /// Line-oriented key=value block.
  std::string to_text() const;
  /// Structured JSON document.
  std::string to_json() const;
};

/// |y ∩ ŷ| / |y|. An empty label scores 1.0 (nothing to miss).
double recall(const Mask3& label, const Mask3& predicted);
double recall(const Mask4& label, const Mask4& predicted);

/// 2|y ∩ ŷ| / (|y| + |ŷ|). Two empty masks score 1.0 by convention.
double dice(const Mask3& a, const Mask3& b);
double dice(const Mask4& a, const Mask4& b);

ConfusionCounts confusion(const Mask3& label, const Mask3& predicted);
ConfusionCounts confusion(const Mask4& label, const Mask4& predicted);

/// McNemar's chi-squared with continuity correction over discordant pairs:
///   (|b - c| - 1)^2 / (b + c).  Requires b + c > 0.
double mcnemar_corrected(std::uint64_t b, std::uint64_t c);

/// base / ours; both must be positive.
double speedup(double base_time_s, double ours_time_s);

struct SliceKey {
  int t = 0;
  int z = 0;
  bool operator==(const SliceKey&) const = default;
};

/// Keep slices whose label mask has at least min_pixels voxels set.
std::vector<SliceKey> filter_slices(const Mask4& labels, int min_pixels = 25);

/// Stand-in segmentation backend: per (t,z) slice, mark voxels strictly
/// above the slice's nearest-rank p-quantile.
Mask4 threshold_segmenter(const Volume4D& roi, float p);

struct EvalOptions {
  int min_pixels = 25;
  std::string config_digest;
};

/// Full comparison of predictions against labels over the slices retained
/// by the min-pixels rule. When a baseline prediction is given the McNemar
/// statistic over discordant voxels is included.
EvalReport evaluate(const Mask4& predicted, const Mask4& labels,
                    const EvalOptions& options = {},
                    const Mask4* baseline = nullptr);

}  // namespace mfocus

#endif  // MFOCUS_METRICS_HPP
