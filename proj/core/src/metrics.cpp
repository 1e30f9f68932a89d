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

#include "mfocus/metrics.hpp"

#include <cmath>
#include <span>
#include <sstream>

#include <nlohmann/json.hpp>

#include "internal_text.hpp"
#include "mfocus/errors.hpp"
#include "mfocus/tensor_ops.hpp"

namespace mfocus {

namespace {

ConfusionCounts confusion_span(std::span<const std::uint8_t> label,
                               std::span<const std::uint8_t> pred) {
  ConfusionCounts c;
  for (std::size_t i = 0; i < label.size(); ++i) {
    const bool y = label[i] != 0;
    const bool yhat = pred[i] != 0;
    if (y && yhat)
      ++c.tp;
    else if (!y && yhat)
      ++c.fp;
    else if (y && !yhat)
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

double recall_from(const ConfusionCounts& c, bool* empty_label = nullptr) {
  const std::uint64_t label_count = c.tp + c.fn;
  if (empty_label) *empty_label = label_count == 0;
  if (label_count == 0) return 1.0;  // nothing to miss
  return static_cast<double>(c.tp) / static_cast<double>(label_count);
}

double dice_from(const ConfusionCounts& c, bool* both_empty = nullptr) {
  const std::uint64_t denom = 2 * c.tp + c.fp + c.fn;
  if (both_empty) *both_empty = denom == 0;
  if (denom == 0) return 1.0;  // two empty masks agree perfectly
  return 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

template <typename MaskT>
void require_same_dims(const MaskT& a, const MaskT& b) {
  if (!(a.dims() == b.dims())) throw Error("mask dims differ");
}

}  // namespace

double recall(const Mask3& label, const Mask3& predicted) {
  require_same_dims(label, predicted);
  return recall_from(confusion_span(label.values(), predicted.values()));
}

double recall(const Mask4& label, const Mask4& predicted) {
  require_same_dims(label, predicted);
  return recall_from(confusion_span(label.values(), predicted.values()));
}

double dice(const Mask3& a, const Mask3& b) {
  require_same_dims(a, b);
  return dice_from(confusion_span(a.values(), b.values()));
}

double dice(const Mask4& a, const Mask4& b) {
  require_same_dims(a, b);
  return dice_from(confusion_span(a.values(), b.values()));
}

ConfusionCounts confusion(const Mask3& label, const Mask3& predicted) {
  require_same_dims(label, predicted);
  return confusion_span(label.values(), predicted.values());
}

ConfusionCounts confusion(const Mask4& label, const Mask4& predicted) {
  require_same_dims(label, predicted);
  return confusion_span(label.values(), predicted.values());
}

double mcnemar_corrected(std::uint64_t b, std::uint64_t c) {
  if (b + c == 0) throw Error("mcnemar requires at least one discordant pair");
  const double diff =
      std::abs(static_cast<double>(b) - static_cast<double>(c)) - 1.0;
  return diff * diff / static_cast<double>(b + c);
}

double speedup(double base_time_s, double ours_time_s) {
  if (!(base_time_s > 0.0) || !(ours_time_s > 0.0))
    throw Error("speedup requires positive times");
  return base_time_s / ours_time_s;
}

std::vector<SliceKey> filter_slices(const Mask4& labels, int min_pixels) {
  if (min_pixels < 0) throw UsageError("min_pixels must be >= 0");
  const Dims4& d = labels.dims();
  std::vector<SliceKey> kept;
  for (int t = 0; t < d.t; ++t) {
    for (int z = 0; z < d.z; ++z) {
      std::size_t count = 0;
      for (int y = 0; y < d.y; ++y)
        for (int x = 0; x < d.x; ++x)
          if (labels(t, z, y, x)) ++count;
      if (count >= static_cast<std::size_t>(min_pixels)) kept.push_back({t, z});
    }
  }
  return kept;
}

Mask4 threshold_segmenter(const Volume4D& roi, float p) {
  const Dims4& d = roi.dims();
  const std::size_t slice_n =
      static_cast<std::size_t>(d.y) * static_cast<std::size_t>(d.x);
  Mask4 out(d);
  auto src = roi.values();
  auto dst = out.values();
  for (int t = 0; t < d.t; ++t) {
    for (int z = 0; z < d.z; ++z) {
      const std::size_t off =
          (static_cast<std::size_t>(t) * d.z + z) * slice_n;
      const float q = quantile(src.subspan(off, slice_n), p);
      for (std::size_t i = 0; i < slice_n; ++i)
        dst[off + i] = src[off + i] > q ? 1 : 0;
    }
  }
  return out;
}

EvalReport evaluate(const Mask4& predicted, const Mask4& labels,
                    const EvalOptions& options, const Mask4* baseline) {
  require_same_dims(predicted, labels);
  if (baseline) require_same_dims(*baseline, labels);

  const Dims4& d = labels.dims();
  const std::vector<SliceKey> kept = filter_slices(labels, options.min_pixels);

  EvalReport report;
  report.min_pixels = options.min_pixels;
  report.slices_total = d.t * d.z;
  report.slices_kept = static_cast<int>(kept.size());
  report.config_digest = options.config_digest;

  std::uint64_t b = 0, c = 0;
  for (const SliceKey& key : kept) {
    for (int y = 0; y < d.y; ++y) {
      for (int x = 0; x < d.x; ++x) {
        const bool lab = labels(key.t, key.z, y, x) != 0;
        const bool pred = predicted(key.t, key.z, y, x) != 0;
        if (lab && pred)
          ++report.counts.tp;
        else if (!lab && pred)
          ++report.counts.fp;
        else if (lab && !pred)
          ++report.counts.fn;
        else
          ++report.counts.tn;
        if (baseline) {
          const bool base_ok = ((*baseline)(key.t, key.z, y, x) != 0) == lab;
          const bool ours_ok = pred == lab;
          if (base_ok && !ours_ok) ++b;
          if (!base_ok && ours_ok) ++c;
        }
      }
    }
  }

  report.recall = recall_from(report.counts, &report.empty_label);
  report.dice = dice_from(report.counts, &report.both_empty);
  if (baseline && b + c > 0) {
    report.has_mcnemar = true;
    report.discordant_b = b;
    report.discordant_c = c;
    report.mcnemar_chi2 = mcnemar_corrected(b, c);
  }
  return report;
}

std::string EvalReport::to_text() const {
  using internal::format_number;
  std::ostringstream os;
  os << "recall=" << format_number(recall) << '\n';
  os << "dice=" << format_number(dice) << '\n';
  os << "tp=" << counts.tp << '\n';
  os << "fp=" << counts.fp << '\n';
  os << "fn=" << counts.fn << '\n';
  os << "tn=" << counts.tn << '\n';
  os << "slices_total=" << slices_total << '\n';
  os << "slices_kept=" << slices_kept << '\n';
  os << "min_pixels=" << min_pixels << '\n';
  os << "empty_label=" << (empty_label ? 1 : 0) << '\n';
  os << "both_empty=" << (both_empty ? 1 : 0) << '\n';
  if (has_mcnemar) {
    os << "mcnemar_chi2=" << format_number(mcnemar_chi2) << '\n';
    os << "discordant_b=" << discordant_b << '\n';
    os << "discordant_c=" << discordant_c << '\n';
  }
  if (has_timing) {
    os << "base_time_s=" << format_number(base_time_s) << '\n';
    os << "ours_time_s=" << format_number(ours_time_s) << '\n';
    os << "speedup=" << format_number(speedup) << '\n';
  }
  if (!config_digest.empty()) os << "config_digest=" << config_digest << '\n';
  return os.str();
}

std::string EvalReport::to_json() const {
  nlohmann::json j;
  j["recall"] = recall;
  j["dice"] = dice;
  j["counts"] = {{"tp", counts.tp}, {"fp", counts.fp},
                 {"fn", counts.fn}, {"tn", counts.tn}};
  j["slices"] = {{"total", slices_total},
                 {"kept", slices_kept},
                 {"min_pixels", min_pixels}};
  j["conventions"] = {{"empty_label", empty_label}, {"both_empty", both_empty}};
  if (has_mcnemar)
    j["mcnemar"] = {{"chi2", mcnemar_chi2},
                    {"b", discordant_b},
                    {"c", discordant_c}};
  if (has_timing)
    j["timing"] = {{"base_time_s", base_time_s},
                   {"ours_time_s", ours_time_s},
                   {"speedup", speedup}};
  if (!config_digest.empty()) j["config_digest"] = config_digest;
  return j.dump(2) + "\n";
}

}  // namespace mfocus
