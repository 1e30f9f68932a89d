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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mfocus/errors.hpp"
#include "mfocus/metrics.hpp"
#include "mfocus/phantom.hpp"
#include "mfocus/roi.hpp"
#include "oracles.hpp"

using namespace mfocus;

namespace {

// Direct-count reference: tallies each voxel once, no shared code with the
// metric implementations.
struct DirectCounts {
  std::uint64_t inter = 0;
  std::uint64_t label = 0;
  std::uint64_t pred = 0;
};

DirectCounts direct_counts(const Mask3& y, const Mask3& yhat) {
  DirectCounts c;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const bool a = y.values()[i] != 0;
    const bool b = yhat.values()[i] != 0;
    if (a) ++c.label;
    if (b) ++c.pred;
    if (a && b) ++c.inter;
  }
  return c;
}

}  // namespace

TEST_CASE("recall covers the containment, disjoint and half cases") {
  Mask3 y({1, 2, 4});
  y(0, 0, 0) = y(0, 0, 1) = y(0, 1, 0) = y(0, 1, 1) = 1;

  Mask3 superset = y;
  superset(0, 0, 2) = 1;
  CHECK(recall(y, superset) == 1.0);

  Mask3 disjoint({1, 2, 4});
  disjoint(0, 0, 3) = 1;
  CHECK(recall(y, disjoint) == 0.0);

  Mask3 half({1, 2, 4});
  half(0, 0, 0) = half(0, 0, 1) = 1;  // 2 of the 4 labeled voxels
  CHECK(recall(y, half) == 0.5);

  Mask3 empty({1, 2, 4});
  CHECK(recall(empty, disjoint) == 1.0);  // nothing to miss

  Mask3 wrong({1, 2, 5});
  CHECK_THROWS_AS(recall(y, wrong), Error);
}

TEST_CASE("dice covers the identical, disjoint and half-overlap cases") {
  Mask3 a({1, 1, 8});
  for (int x = 0; x < 4; ++x) a(0, 0, x) = 1;
  CHECK(dice(a, a) == 1.0);

  Mask3 b({1, 1, 8});
  for (int x = 4; x < 8; ++x) b(0, 0, x) = 1;
  CHECK(dice(a, b) == 0.0);

  Mask3 c({1, 1, 8});
  for (int x = 2; x < 6; ++x) c(0, 0, x) = 1;  // overlap 2, sizes 4+4
  CHECK(dice(a, c) == 0.5);

  Mask3 e1({1, 1, 8}), e2({1, 1, 8});
  CHECK(dice(e1, e2) == 1.0);
}

TEST_CASE("dice is symmetric, recall is not") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const Mask3 y = oracle::random_mask3(rng, {2, 6, 6}, 0.3);
    const Mask3 p = oracle::random_mask3(rng, {2, 6, 6}, 0.5);
    CHECK(dice(y, p) == dice(p, y));
  }
  // Asymmetric counter-example: prediction strictly contains the label.
  Mask3 y({1, 1, 4});
  y(0, 0, 0) = 1;
  Mask3 p({1, 1, 4});
  p(0, 0, 0) = p(0, 0, 1) = 1;
  CHECK(recall(y, p) == 1.0);
  CHECK(recall(p, y) == 0.5);
}

TEST_CASE("dice and recall reproduce direct-count oracles on random pairs") {
  std::mt19937 rng(72);
  for (int trial = 0; trial < 1000; ++trial) {
    const Mask3 y = oracle::random_mask3(rng, {2, 5, 5}, 0.4);
    const Mask3 p = oracle::random_mask3(rng, {2, 5, 5}, 0.4);
    const DirectCounts c = direct_counts(y, p);

    const double want_recall =
        c.label == 0 ? 1.0 : static_cast<double>(c.inter) / c.label;
    const double want_dice = (c.label + c.pred) == 0
                                 ? 1.0
                                 : 2.0 * static_cast<double>(c.inter) /
                                       static_cast<double>(c.label + c.pred);
    CHECK(recall(y, p) == want_recall);
    CHECK(dice(y, p) == want_dice);
    CHECK(2 * c.inter <= c.label + c.pred);  // numerator bound
    CHECK(dice(y, p) <= 1.0);
    if (dice(y, p) == 1.0) CHECK(y == p);
    if (recall(y, p) == 1.0) CHECK(c.inter == c.label);  // y subset of p

    const ConfusionCounts counts = confusion(y, p);
    CHECK(counts.tp == c.inter);
    CHECK(counts.tp + counts.fn == c.label);
    CHECK(counts.tp + counts.fp == c.pred);
    CHECK(counts.total() == y.size());
  }
}

TEST_CASE("mcnemar reproduces the published contingency statistic") {
  const double chi2 = mcnemar_corrected(2543222, 818157);
  CHECK(std::abs(chi2 - 885305.1) <= 0.5);
}

TEST_CASE("mcnemar handles symmetric and one-sided discordance") {
  CHECK(mcnemar_corrected(10, 0) == doctest::Approx(8.1).epsilon(1e-12));
  const double b = 5000.0;
  CHECK(mcnemar_corrected(5000, 5000) ==
        doctest::Approx(1.0 / (2.0 * b)).epsilon(1e-9));
  CHECK_THROWS_AS(mcnemar_corrected(0, 0), Error);
}

TEST_CASE("speedup reproduces the published timing ratios") {
  CHECK(std::abs(speedup(427.2, 170.3) - 2.51) <= 0.01);
  CHECK(std::abs(speedup(93.2, 37.6) - 2.48) <= 0.01);
  CHECK(std::abs(speedup(254.7, 95.1) - 2.68) <= 0.01);
  CHECK(std::abs(speedup(21.0, 11.6) - 1.81) <= 0.01);
  CHECK(speedup(3.0, 3.0) == 1.0);
  CHECK_THROWS_AS(speedup(0.0, 1.0), Error);
}

TEST_CASE("filter_slices applies the at-least rule inclusively") {
  Mask4 labels({2, 3, 10, 10});
  // (t=0,z=0): 24 voxels; (t=0,z=1): 25; (t=1,z=2): 40.
  int placed = 0;
  for (int y = 0; y < 10 && placed < 24; ++y)
    for (int x = 0; x < 10 && placed < 24; ++x, ++placed)
      labels(0, 0, y, x) = 1;
  placed = 0;
  for (int y = 0; y < 10 && placed < 25; ++y)
    for (int x = 0; x < 10 && placed < 25; ++x, ++placed)
      labels(0, 1, y, x) = 1;
  placed = 0;
  for (int y = 0; y < 10 && placed < 40; ++y)
    for (int x = 0; x < 10 && placed < 40; ++x, ++placed)
      labels(1, 2, y, x) = 1;

  const auto kept = filter_slices(labels, 25);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0] == SliceKey{0, 1});
  CHECK(kept[1] == SliceKey{1, 2});

  CHECK(filter_slices(labels, 0).size() == 6);  // every slice retained
  CHECK_THROWS_AS(filter_slices(labels, -1), UsageError);
}

TEST_CASE("threshold_segmenter marks nothing at p=1 and almost all at p=0") {
  std::mt19937 rng(73);
  const Volume4D roi = oracle::random_volume4(rng, {2, 2, 8, 8});
  const Mask4 none = threshold_segmenter(roi, 1.0f);
  CHECK(none.count_set() == 0);
  const Mask4 most = threshold_segmenter(roi, 0.0f);
  CHECK(most.count_set() >= roi.size() - 4 * 1);  // all but each slice's min
}

TEST_CASE("threshold_segmenter hits the regression dice bound on a bimodal phantom") {
  PhantomSpec spec;
  spec.seed = 21;
  // Bimodal intensities: bright ring on a dark background, blood pool at
  // the background level. Ring area roughly matches the segmenter's
  // per-slice marking fraction (1 - p).
  spec.intensity_background = 0.2f;
  spec.intensity_blood = 0.2f;
  spec.intensity_myocardium = 0.8f;
  spec.noise_amplitude = 0.05f;
  spec.inner_diastole = 10.0f;
  spec.outer_diastole = 22.0f;
  spec.inner_systole = 8.0f;
  spec.outer_systole = 17.6f;
  spec.apex_taper = 0.2f;
  const PhantomOutput phantom = generate(spec);
  const Mask4 pred = threshold_segmenter(phantom.volume, 0.7f);
  CHECK(dice(phantom.myocardium, pred) > 0.6);
}

TEST_CASE("evaluate composes counts, conventions and McNemar") {
  Mask4 labels({1, 2, 8, 8});
  Mask4 pred({1, 2, 8, 8});
  Mask4 base({1, 2, 8, 8});
  // Slice (0,0) carries 30 labeled voxels, slice (0,1) only 3 (dropped at
  // min_pixels 25).
  int placed = 0;
  for (int y = 0; y < 8 && placed < 30; ++y)
    for (int x = 0; x < 8 && placed < 30; ++x, ++placed) {
      labels(0, 0, y, x) = 1;
      pred(0, 0, y, x) = placed < 20 ? 1 : 0;  // ours misses 10
      base(0, 0, y, x) = placed < 25 ? 1 : 0;  // baseline misses 5
    }
  labels(0, 1, 0, 0) = labels(0, 1, 0, 1) = labels(0, 1, 0, 2) = 1;

  EvalOptions options;
  options.min_pixels = 25;
  const EvalReport report = evaluate(pred, labels, options, &base);
  CHECK(report.slices_total == 2);
  CHECK(report.slices_kept == 1);
  CHECK(report.counts.tp == 20);
  CHECK(report.counts.fn == 10);
  CHECK(report.counts.fp == 0);
  CHECK(report.recall == doctest::Approx(20.0 / 30.0));
  CHECK(report.has_mcnemar);
  // Voxels 20..24: baseline correct (1), ours wrong -> b = 5; none the
  // other way -> c = 0.
  CHECK(report.discordant_b == 5);
  CHECK(report.discordant_c == 0);
  CHECK(report.mcnemar_chi2 == doctest::Approx((5.0 - 1) * (5.0 - 1) / 5.0));

  const std::string text = report.to_text();
  CHECK(text.find("recall=") != std::string::npos);
  CHECK(text.find("mcnemar_chi2=") != std::string::npos);
  const std::string json = report.to_json();
  CHECK(json.find("\"dice\"") != std::string::npos);
}

TEST_CASE("evaluate on identical masks is perfect agreement") {
  std::mt19937 rng(74);
  Mask4 m({2, 2, 10, 10});
  for (auto& v : m.values()) v = rng() % 3 == 0 ? 1 : 0;
  const EvalReport report = evaluate(m, m, {.min_pixels = 0, .config_digest = ""});
  CHECK(report.recall == 1.0);
  CHECK(report.dice == 1.0);
  CHECK(report.counts.fp == 0);
  CHECK(report.counts.fn == 0);
}
