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

// Acceptance suite. Runs each release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mfocus/container.hpp"
#include "mfocus/features.hpp"
#include "mfocus/focus.hpp"
#include "mfocus/metrics.hpp"
#include "mfocus/phantom.hpp"
#include "mfocus/roi.hpp"
#include "mfocus/tensor_ops.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace mfocus;
using Clock = std::chrono::steady_clock;

namespace {

struct Harness {
  int failures = 0;

  void run(const std::string& name, const std::function<void()>& body) {
    const auto start = Clock::now();
    std::string error;
    try {
      body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream line;
    if (error.empty()) {
      line << "[PASS] " << name;
    } else {
      ++failures;
      line << "[FAIL] " << name;
    }
    line.precision(2);
    line << " (" << std::fixed << seconds << " s)";
    if (!error.empty()) line << ": " << error;
    std::cout << line.str() << std::endl;
  }
};

void require(bool ok, const std::string& message) {
  if (!ok) throw std::runtime_error(message);
}

double elapsed(const std::function<void()>& body) {
  const auto start = Clock::now();
  body();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion 1: ROI coverage over 50 seeded beating phantoms ---------------

void roi_coverage() {
  const auto start = Clock::now();
  std::mt19937 rng(2024);
  std::uniform_real_distribution<float> unit(0.0f, 1.0f);
  for (int trial = 0; trial < 50; ++trial) {
    PhantomSpec spec;
    spec.seed = 1000 + trial;
    spec.center = {32.0f + 16.0f * (unit(rng) - 0.5f),
                   32.0f + 16.0f * (unit(rng) - 0.5f),
                   4.0f + (unit(rng) - 0.5f)};
    spec.outer_diastole = 14.0f + 8.0f * unit(rng);
    spec.inner_diastole = spec.outer_diastole - (4.0f + 4.0f * unit(rng));
    const float contraction = 0.72f + 0.13f * unit(rng);
    spec.inner_systole = spec.inner_diastole * contraction;
    spec.outer_systole = spec.outer_diastole * contraction;
    // Noise up to 20% of the level contrast.
    const float contrast =
        std::min(spec.intensity_myocardium - spec.intensity_background,
                 spec.intensity_blood - spec.intensity_myocardium);
    spec.noise_amplitude = 0.2f * contrast * unit(rng);

    const PhantomOutput phantom = generate(spec);
    const FocusResult focus = run_focus(phantom.volume);
    RoiConfig cfg;  // k = 2
    const auto [roi, box] = extract_roi(phantom.volume, focus, cfg);
    (void)roi;

    const Dims4& d = phantom.myocardium.dims();
    for (int t = 0; t < d.t; ++t) {
      std::size_t label = 0, covered = 0;
      for (int z = 0; z < d.z; ++z)
        for (int y = 0; y < d.y; ++y)
          for (int x = 0; x < d.x; ++x)
            if (phantom.myocardium(t, z, y, x)) {
              ++label;
              if (x >= box.x.lo && x < box.x.hi && y >= box.y.lo &&
                  y < box.y.hi && z >= box.z.lo && z < box.z.hi)
                ++covered;
            }
      require(label > 0, "phantom frame carries no ring voxels");
      if (covered != label) {
        std::ostringstream msg;
        msg << "seed " << spec.seed << " frame " << t << ": recall "
            << static_cast<double>(covered) / label << " < 1.0";
        throw std::runtime_error(msg.str());
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  require(seconds < 60.0, "coverage sweep exceeded 60 s");
}

// --- criterion 2: McNemar statistic ------------------------------------------

void mcnemar_value() {
  const double chi2 = mcnemar_corrected(2543222, 818157);
  std::ostringstream msg;
  msg << "chi2 = " << chi2 << ", expected 885305.1 +- 0.5";
  require(std::abs(chi2 - 885305.1) <= 0.5, msg.str());
}

// --- criterion 3: speedup arithmetic and the desk-scale analog ----------------

void speedup_checks() {
  const struct {
    double base, ours, printed;
  } rows[] = {{427.2, 170.3, 2.51},
              {93.2, 37.6, 2.48},
              {254.7, 95.1, 2.68},
              {21.0, 11.6, 1.81}};
  for (const auto& row : rows) {
    const double r = speedup(row.base, row.ours);
    std::ostringstream msg;
    msg << row.base << "/" << row.ours << " = " << r << ", printed "
        << row.printed;
    require(std::abs(r - row.printed) <= 0.01, msg.str());
  }

  // Desk-scale analog: cropped-volume inference vs full-volume inference.
  PhantomSpec spec;
  spec.dims = {20, 10, 256, 256};
  spec.center = {128, 128, 5};
  spec.inner_diastole = 18.0f;
  spec.outer_diastole = 30.0f;
  spec.inner_systole = 13.0f;
  spec.outer_systole = 23.0f;
  spec.seed = 99;
  const PhantomOutput phantom = generate(spec);
  const Volume4D normalized = normalize(phantom.volume);
  const FocusResult focus = run_focus(phantom.volume);
  const auto [roi, box] = extract_roi(normalized, focus, {});

  auto median3 = [](const Volume4D& v) {
    std::vector<double> times;
    for (int i = 0; i < 3; ++i)
      times.push_back(elapsed([&] {
        volatile std::size_t sink = threshold_segmenter(v, 0.7f).count_set();
        (void)sink;
      }));
    std::sort(times.begin(), times.end());
    return times[1];
  };
  const double base_s = median3(normalized);
  const double ours_s = median3(roi);
  const double ratio = speedup(base_s, ours_s);
  std::ostringstream msg;
  msg << "full " << base_s << " s vs roi " << ours_s << " s -> " << ratio
      << "x < 1.5x";
  require(ratio >= 1.5, msg.str());
}

// --- criterion 4: kernel oracle equivalence ------------------------------------

void kernel_oracles() {
  const auto start = Clock::now();
  std::mt19937 rng(4242);
  const Boundary boundaries[] = {Boundary::kReplicate, Boundary::kZero,
                                 Boundary::kPeriodic};
  int volumes = 0;

  // Generic convolution against the nested-loop oracle.
  for (int trial = 0; trial < 40; ++trial, ++volumes) {
    const Volume3D v = oracle::random_volume3(
        rng, oracle::random_dims3(rng, 3, 8), -1.0f, 1.0f);
    Kernel3 k;
    k.dims = {oracle::random_odd(rng, 3), oracle::random_odd(rng, 3),
              oracle::random_odd(rng, 3)};
    std::uniform_real_distribution<double> wdist(-1.0, 1.0);
    k.weights.resize(k.dims.voxels());
    for (double& w : k.weights) w = wdist(rng);
    const Boundary b = boundaries[trial % 3];
    const Volume3D got = convolve(v, k, b);
    const Volume3D want = oracle::convolve_naive(v, k, b);
    for (std::size_t i = 0; i < got.size(); ++i)
      require(std::abs(got.values()[i] - want.values()[i]) < 1e-5f,
              "convolve deviates from the nested-loop oracle");
  }

  // Windowed mean and standard deviation.
  for (int trial = 0; trial < 20; ++trial, ++volumes) {
    const Volume3D frame = oracle::random_volume3(
        rng, oracle::random_dims3(rng, 3, 8));
    const Volume3D mean = mean_image(frame);
    const Volume3D want_mean = oracle::window_mean_naive(frame);
    for (std::size_t i = 0; i < mean.size(); ++i)
      require(std::abs(mean.values()[i] - want_mean.values()[i]) < 1e-5f,
              "mean_image deviates from the windowed oracle");
    const Volume3D stddev = std_image(frame, mean);
    const Volume3D want_std = oracle::window_std_naive(frame);
    for (std::size_t i = 0; i < stddev.size(); ++i)
      require(std::abs(stddev.values()[i] - want_std.values()[i]) < 1e-5f,
              "std_image deviates from the windowed oracle");
    ++volumes;  // mean and std sweeps share the frame but count separately
  }

  // Motion energy on 4D sequences up to 8^4.
  std::uniform_int_distribution<int> dim(3, 8);
  for (int trial = 0; trial < 20; ++trial, ++volumes) {
    const Dims4 dims{dim(rng), dim(rng), dim(rng), dim(rng)};
    const Volume4D v = oracle::random_volume4(rng, dims);
    const Boundary b =
        trial % 2 ? Boundary::kPeriodic : Boundary::kReplicate;
    const Volume3D got = motion_energy(v, b);
    const Volume3D want = oracle::motion_energy_naive(v, b);
    for (std::size_t i = 0; i < got.size(); ++i)
      require(std::abs(got.values()[i] - want.values()[i]) < 1e-5f,
              "motion_energy deviates from the tap oracle");
  }

  require(volumes >= 100, "fewer than 100 oracle volumes exercised");
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  require(seconds < 30.0, "kernel oracle sweep exceeded 30 s");
}

// --- criterion 5: focus correctness --------------------------------------------

void focus_correctness() {
  std::mt19937 rng(777);

  for (int trial = 0; trial < 20; ++trial) {
    const Volume3D v = oracle::random_volume3(
        rng, oracle::random_dims3(rng, 2, 10));
    const Coord got = energy_center(v);
    const Coord want = oracle::centroid_naive(v);
    require(std::abs(got.x - want.x) < 1e-9 &&
                std::abs(got.y - want.y) < 1e-9 &&
                std::abs(got.z - want.z) < 1e-9,
            "energy_center deviates from brute force beyond 1e-9");
  }

  // Bit-exact invariance of the center and mask under positive scaling.
  for (int trial = 0; trial < 20; ++trial) {
    const Volume3D v = oracle::random_volume3(rng, {6, 8, 8}, 0.0f, 3.0f);
    const Coord c0 = energy_center(v);
    const auto [m0, t0] = threshold_mask(v, 0.9f);
    const float s0 = scale_estimate(m0, max_coord(v.dims()));
    const Volume3D y0 = rbf_field(v.dims(), c0, s0, max_coord(v.dims()));
    for (const float factor : {2.0f, 0.25f, 8.0f}) {
      Volume3D w = v;
      for (float& x : w.values()) x *= factor;
      const Coord c1 = energy_center(w);
      require(c1 == c0, "center changed under positive rescaling");
      const auto [m1, t1] = threshold_mask(w, 0.9f);
      require(m1 == m0, "threshold mask changed under positive rescaling");
      const float s1 = scale_estimate(m1, max_coord(v.dims()));
      require(s1 == s0, "scale changed under positive rescaling");
      const Volume3D y1 = rbf_field(v.dims(), c1, s1, max_coord(v.dims()));
      require(y1 == y0, "rbf field changed under positive rescaling");
    }
  }

  // RBF values at d = 0 and d = sigma.
  const Dims3 dims{9, 9, 9};
  const Volume3D field = rbf_field(dims, {4, 4, 4}, 0.25f, max_coord(dims));
  require(std::abs(field(4, 4, 4) - 1.0) < 1e-7, "rbf(0) differs from 1");
  require(std::abs(field(4, 4, 6) - std::exp(-1.0)) < 1e-7,
          "rbf(sigma) differs from exp(-1)");
}

// --- criterion 6: resampling ----------------------------------------------------

void resampling_checks() {
  std::mt19937 rng(31337);

  {  // identity shape
    Image2D img{24, 31, {}};
    img.data.resize(24 * 31);
    std::uniform_real_distribution<float> dist(-1.0f, 2.0f);
    for (float& v : img.data) v = dist(rng);
    const Image2D out = resample_bicubic(img, 24, 31);
    for (std::size_t i = 0; i < img.data.size(); ++i)
      require(std::abs(out.data[i] - img.data[i]) <= 1e-6f,
              "identity resample error exceeds 1e-6");
  }

  {  // linear ramp, 2x upscale, interior stencils
    const int n = 64, tn = 128;
    Image2D img{n, n, std::vector<float>(static_cast<std::size_t>(n) * n)};
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        img.at(y, x) = static_cast<float>(x) / (n - 1);
    const Image2D out = resample_bicubic(img, tn, tn);
    for (int y = 0; y < tn; ++y) {
      const double sy = static_cast<double>(y) * (n - 1) / (tn - 1);
      const int by = static_cast<int>(std::floor(sy));
      if (by - 1 < 0 || by + 2 > n - 1) continue;
      for (int x = 0; x < tn; ++x) {
        const double sx = static_cast<double>(x) * (n - 1) / (tn - 1);
        const int bx = static_cast<int>(std::floor(sx));
        if (bx - 1 < 0 || bx + 2 > n - 1) continue;
        require(std::abs(out.at(y, x) - sx / (n - 1)) <= 1e-4,
                "ramp upscale deviates from linear beyond 1e-4");
      }
    }
  }

  {  // constants
    Image2D img{16, 16, std::vector<float>(256, 0.375f)};
    const Image2D out = resample_bicubic(img, 40, 24);
    for (float v : out.data)
      require(std::abs(v - 0.375f) <= 1e-6f,
              "constant preservation error exceeds 1e-6");
  }
}

// --- criterion 7: metric identities ----------------------------------------------

void metric_identities() {
  std::mt19937 rng(9090);
  for (int trial = 0; trial < 1000; ++trial) {
    const Mask3 y = oracle::random_mask3(rng, {2, 6, 6}, 0.35);
    const Mask3 p = oracle::random_mask3(rng, {2, 6, 6}, 0.35);
    std::uint64_t inter = 0, ny = 0, np = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const bool a = y.values()[i] != 0, b = p.values()[i] != 0;
      inter += a && b;
      ny += a;
      np += b;
    }
    const double want_recall =
        ny == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(ny);
    const double want_dice =
        ny + np == 0
            ? 1.0
            : 2.0 * static_cast<double>(inter) / static_cast<double>(ny + np);
    require(recall(y, p) == want_recall, "recall differs from direct count");
    require(dice(y, p) == want_dice, "dice differs from direct count");
    require(dice(y, p) == dice(p, y), "dice asymmetry detected");
    require(2 * inter <= ny + np, "dice numerator bound violated");
    require(dice(y, p) <= 1.0, "dice above 1");
    if (dice(y, p) == 1.0)
      require(y == p, "dice 1 on unequal masks");
  }
}

// --- criterion 8: end-to-end determinism ------------------------------------------

std::string slurp_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing output: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void pipeline_determinism() {
  const fs::path root =
      fs::temp_directory_path() /
      ("mfocus_accept_" + std::to_string(std::random_device{}()));
  const std::string cli = MFOCUS_CLI_PATH;

  auto run_pipeline = [&](const fs::path& dir) {
    fs::create_directories(dir);
    const std::string commands[] = {
        "phantom --seed 7 --out p.t4d --masks m.t4d",
        "focus --in p.t4d --manifest man.json --fields fld",
        "crop --in p.t4d --masks m.t4d --manifest man.json --out-dir roi",
        "eval --roi roi/p.roi.t4d --labels roi/m.roimask.t4d "
        "--report rep.txt --report-json rep.json",
    };
    for (const std::string& c : commands) {
      const std::string cmd = "cd '" + dir.string() + "' && '" + cli + "' " +
                              c + " >> cli.log 2>&1";
      if (std::system(cmd.c_str()) != 0)
        throw std::runtime_error("pipeline step failed: " + c);
    }
  };

  run_pipeline(root / "a");
  run_pipeline(root / "b");

  for (const char* rel :
       {"man.json", "rep.txt", "rep.json", "roi/p.roi.t4d",
        "roi/m.roimask.t4d", "p.t4d", "m.t4d", "fld/p_fused.t3d",
        "fld/p_rbf.t3d"}) {
    if (slurp_file(root / "a" / rel) != slurp_file(root / "b" / rel))
      throw std::runtime_error(std::string("outputs differ: ") + rel);
  }
  fs::remove_all(root);
}

// --- criterion 9: full pipeline latency ---------------------------------------------

void pipeline_latency() {
  PhantomSpec spec;
  spec.dims = {20, 10, 256, 256};
  spec.center = {128, 128, 5};
  spec.inner_diastole = 18.0f;
  spec.outer_diastole = 30.0f;
  spec.inner_systole = 13.0f;
  spec.outer_systole = 23.0f;
  spec.seed = 5;
  const PhantomOutput phantom = generate(spec);

  const double seconds = elapsed([&] {
    const FocusResult focus = run_focus(phantom.volume);
    const auto [roi, box] = extract_roi(phantom.volume, focus, {});
    volatile float sink = roi.values()[0];
    (void)sink;
  });
  std::ostringstream msg;
  msg << "run_focus + extract_roi took " << seconds << " s (budget 5 s)";
  require(seconds < 5.0, msg.str());
}

}  // namespace

int main() {
  Harness h;
  h.run("roi-coverage: 50 beating phantoms, k=2 boxes, recall 1.0 per frame",
        roi_coverage);
  h.run("mcnemar: corrected chi-squared matches the published table",
        mcnemar_value);
  h.run("speedup: published ratios within 0.01; roi inference >= 1.5x faster",
        speedup_checks);
  h.run("kernel-oracles: convolve/mean/std/motion vs naive loops, 1e-5",
        kernel_oracles);
  h.run("focus: brute-force center 1e-9; scaling invariance; rbf anchors",
        focus_correctness);
  h.run("resampling: identity 1e-6, ramp 1e-4, constant 1e-6",
        resampling_checks);
  h.run("metrics: dice/recall equal direct counts on 1000 pairs",
        metric_identities);
  h.run("determinism: focus+crop+eval twice, byte-identical outputs",
        pipeline_determinism);
  h.run("latency: run_focus + extract_roi on 256x256x10x20 under 5 s",
        pipeline_latency);

  if (h.failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << h.failures << " acceptance criteria failed" << std::endl;
  return 1;
}
