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

// mfocus: heart localization and ROI extraction for 4D cardiac MRI.
//
// Subcommands:
//   focus    localize inputs, write an ROI manifest (+ heatmaps, fields)
//   crop     apply a manifest to volumes (and label masks)
//   phantom  generate a deterministic beating-annulus test volume
//   eval     compare predictions against labels
//   bench    time the stand-in segmenter with and without the ROI crop
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mfocus/container.hpp"
#include "mfocus/errors.hpp"
#include "mfocus/focus.hpp"
#include "mfocus/heatmap.hpp"
#include "mfocus/manifest.hpp"
#include "mfocus/metrics.hpp"
#include "mfocus/nifti.hpp"
#include "mfocus/phantom.hpp"
#include "mfocus/roi.hpp"
#include "mfocus/volume.hpp"

namespace fs = std::filesystem;
using namespace mfocus;

namespace {

template <typename T>
std::string num(T value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::vector<float> parse_floats(const std::string& text, std::size_t expect,
                                const char* what) {
  std::vector<float> out;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stof(tok));
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + ": " + text);
    }
  }
  if (out.size() != expect)
    throw UsageError(std::string(what) + " needs " + std::to_string(expect) +
                     " comma-separated values: " + text);
  return out;
}

std::pair<int, int> parse_target(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos)
    throw UsageError("target shape must look like HxW: " + text);
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw UsageError("target shape must look like HxW: " + text);
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Volume4D read_volume(const std::string& path) {
  if (ends_with(path, ".nii") || ends_with(path, ".nii.gz"))
    return read_nifti(path);
  return read_container4(path);
}

std::string stem_of(const std::string& path) {
  std::string name = fs::path(path).filename().string();
  if (ends_with(name, ".nii.gz"))
    return name.substr(0, name.size() - 7);
  const auto dot = name.rfind('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

// Flags shared by the pipeline-running subcommands.
struct PipelineFlags {
  std::string weights = "0.1,0.9";
  float percentile = 0.9f;
  float smooth_sigma = 5.0f;
  float epsilon = kDefaultEpsilon;
  float scale_coeff = 3.0f;
  std::string temporal_boundary = "periodic";
  std::string static_frame = "first";
  float k = 2.0f;
  std::string target = "128x128";
  int multiple = 32;
  int min_pixels = 25;
  float segment_percentile = 0.7f;

  PipelineConfig to_config() const {
    PipelineConfig cfg;
    const auto w = parse_floats(weights, 2, "--weights");
    cfg.focus.weights = {w[0], w[1]};
    cfg.focus.percentile = percentile;
    cfg.focus.smooth_sigma = smooth_sigma;
    cfg.focus.epsilon = epsilon;
    cfg.focus.scale_coefficient = scale_coeff;
    if (temporal_boundary == "periodic")
      cfg.focus.temporal_boundary = Boundary::kPeriodic;
    else if (temporal_boundary == "replicate")
      cfg.focus.temporal_boundary = Boundary::kReplicate;
    else
      throw UsageError("--temporal-boundary must be periodic or replicate");
    if (static_frame == "first")
      cfg.focus.static_frame = StaticFrame::kFirst;
    else if (static_frame == "mean")
      cfg.focus.static_frame = StaticFrame::kTimeMean;
    else
      throw UsageError("--static-frame must be first or mean");
    cfg.roi.k = k;
    std::tie(cfg.roi.target_h, cfg.roi.target_w) = parse_target(target);
    cfg.roi.multiple = multiple;
    cfg.roi.epsilon = epsilon;
    cfg.min_pixels = min_pixels;
    cfg.segment_percentile = segment_percentile;
    return cfg;
  }
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--weights", f.weights, "Static,motion fusion weights")
      ->capture_default_str()->envname("MFOCUS_WEIGHTS");
  cmd->add_option("--percentile", f.percentile, "Energy threshold percentile")
      ->capture_default_str()->envname("MFOCUS_PERCENTILE");
  cmd->add_option("--smooth-sigma", f.smooth_sigma,
                  "Gaussian sigma applied to the fused energy (voxels)")
      ->capture_default_str()->envname("MFOCUS_SMOOTH_SIGMA");
  cmd->add_option("--epsilon", f.epsilon, "Normalization guard constant")
      ->capture_default_str()->envname("MFOCUS_EPSILON");
  cmd->add_option("--scale-coeff", f.scale_coeff,
                  "Coefficient of the cube-root scale estimate")
      ->capture_default_str()->envname("MFOCUS_SCALE_COEFF");
  cmd->add_option("--temporal-boundary", f.temporal_boundary,
                  "Temporal extension: periodic|replicate")
      ->capture_default_str()->envname("MFOCUS_TEMPORAL_BOUNDARY");
  cmd->add_option("--static-frame", f.static_frame,
                  "Frame feeding the static features: first|mean")
      ->capture_default_str()->envname("MFOCUS_STATIC_FRAME");
  cmd->add_option("--k", f.k, "Crop half-extent in units of sigma_v*r_max")
      ->capture_default_str()->envname("MFOCUS_K");
  cmd->add_option("--target", f.target, "Output slice shape HxW")
      ->capture_default_str()->envname("MFOCUS_TARGET");
  cmd->add_option("--multiple", f.multiple,
                  "Round target extents up to this multiple")
      ->capture_default_str()->envname("MFOCUS_MULTIPLE");
  cmd->add_option("--min-pixels", f.min_pixels,
                  "Discard label slices with fewer marked pixels")
      ->capture_default_str()->envname("MFOCUS_MIN_PIXELS");
  cmd->add_option("--segment-percentile", f.segment_percentile,
                  "Per-slice percentile of the stand-in segmenter")
      ->capture_default_str()->envname("MFOCUS_SEGMENT_PERCENTILE");
}

// ---- focus ----------------------------------------------------------------

struct FocusArgs {
  std::vector<std::string> inputs;
  std::string manifest_path = "manifest.json";
  std::string heatmap_dir;
  std::string fields_dir;
  int jobs = 1;
  PipelineFlags flags;
};

RoiRecord focus_one(const std::string& input, const PipelineConfig& cfg,
                    const std::string& heatmap_dir,
                    const std::string& fields_dir) {
  const Volume4D volume = read_volume(input);
  const FocusResult result = run_focus(volume, cfg.focus);

  RoiBox box = box_from_focus(result, cfg.roi.k);
  std::tie(box.target_h, box.target_w) =
      fit_to_multiple(cfg.roi.target_h, cfg.roi.target_w, cfg.roi.multiple);

  RoiRecord record;
  record.source = input;
  record.source_dims = volume.dims();
  record.spacing = volume.spacing();
  record.box = box;
  record.center = result.center;
  record.scale = result.scale;
  record.threshold = result.threshold;
  record.fallback = result.fallback;

  const std::string stem = stem_of(input);
  if (!heatmap_dir.empty()) {
    const int mid = result.fused.dims().z / 2;
    write_heatmap(result.fused, mid, heatmap_dir + "/" + stem + "_fused.pgm");
    write_heatmap(result.rbf, mid, heatmap_dir + "/" + stem + "_rbf.pgm");
    write_heatmap(result.features.motion, mid,
                  heatmap_dir + "/" + stem + "_motion.pgm");
  }
  if (!fields_dir.empty()) {
    write_container(fields_dir + "/" + stem + "_fused.t3d", result.fused);
    write_container(fields_dir + "/" + stem + "_rbf.t3d", result.rbf);
    write_container(fields_dir + "/" + stem + "_mask.t3d",
                    to_volume(result.mask));
  }
  return record;
}

int run_focus_cmd(const FocusArgs& args) {
  const PipelineConfig cfg = args.flags.to_config();
  if (!args.heatmap_dir.empty()) fs::create_directories(args.heatmap_dir);
  if (!args.fields_dir.empty()) fs::create_directories(args.fields_dir);

  RoiManifest manifest;
  manifest.config_digest = cfg.digest();
  manifest.records.resize(args.inputs.size());

  const std::size_t jobs = static_cast<std::size_t>(std::max(1, args.jobs));
  if (jobs == 1) {
    for (std::size_t i = 0; i < args.inputs.size(); ++i)
      manifest.records[i] =
          focus_one(args.inputs[i], cfg, args.heatmap_dir, args.fields_dir);
  } else {
    for (std::size_t start = 0; start < args.inputs.size(); start += jobs) {
      const std::size_t end = std::min(start + jobs, args.inputs.size());
      std::vector<std::future<RoiRecord>> batch;
      for (std::size_t i = start; i < end; ++i)
        batch.push_back(std::async(std::launch::async, focus_one,
                                   args.inputs[i], cfg, args.heatmap_dir,
                                   args.fields_dir));
      for (std::size_t i = start; i < end; ++i)
        manifest.records[i] = batch[i - start].get();
    }
  }

  save_manifest(args.manifest_path, manifest);
  for (const RoiRecord& r : manifest.records) {
    std::cout << r.source << ": center=(" << num(r.center.x) << ','
              << num(r.center.y) << ',' << num(r.center.z) << ") scale="
              << num(r.scale) << " box=[" << r.box.x.lo << ',' << r.box.x.hi
              << ")x[" << r.box.y.lo << ',' << r.box.y.hi << ")x["
              << r.box.z.lo << ',' << r.box.z.hi << ")"
              << (r.fallback ? " fallback" : "") << '\n';
  }
  std::cout << "manifest: " << args.manifest_path << " (digest "
            << manifest.config_digest << ")\n";
  return 0;
}

// ---- crop -----------------------------------------------------------------

struct CropArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> masks;
  std::string manifest_path;
  std::string out_dir = ".";
  float epsilon = kDefaultEpsilon;
};

const RoiRecord& record_for(const RoiManifest& manifest,
                            const std::string& source) {
  for (const RoiRecord& r : manifest.records)
    if (r.source == source) return r;
  throw DataError("no manifest record for input: " + source);
}

int run_crop_cmd(const CropArgs& args) {
  const RoiManifest manifest = load_manifest(args.manifest_path);
  std::cout << "manifest digest " << manifest.config_digest << '\n';
  fs::create_directories(args.out_dir);
  if (!args.masks.empty() && args.masks.size() != args.inputs.size())
    throw UsageError("--masks must list one file per --in input");

  for (std::size_t i = 0; i < args.inputs.size(); ++i) {
    const std::string& input = args.inputs[i];
    const RoiRecord& record = record_for(manifest, input);
    const Volume4D volume = read_volume(input);
    if (volume.dims() != record.source_dims)
      throw DataError(input + ": dims changed since the manifest was written");
    // Same contract as the in-library extraction: boxes apply to the
    // normalized volume.
    const Volume4D roi =
        apply_roi(normalize(volume, args.epsilon), record.box, args.epsilon);
    const std::string out_path =
        args.out_dir + "/" + stem_of(input) + ".roi.t4d";
    write_container(out_path, roi);
    std::cout << input << " -> " << out_path << '\n';

    if (!args.masks.empty()) {
      const Mask4 mask = to_mask(read_volume(args.masks[i]), 0.5f);
      if (mask.dims() != record.source_dims)
        throw DataError(args.masks[i] + ": mask dims do not match the source");
      const Mask4 roi_mask = apply_roi_mask(mask, record.box);
      const std::string mask_path =
          args.out_dir + "/" + stem_of(args.masks[i]) + ".roimask.t4d";
      write_container(mask_path, to_volume(roi_mask, roi.spacing()));
      std::cout << args.masks[i] << " -> " << mask_path << '\n';
    }
  }
  return 0;
}

// ---- phantom ----------------------------------------------------------------

struct PhantomArgs {
  std::string out = "phantom.t4d";
  std::string masks;
  int frames = 12, slices = 8, height = 64, width = 64;
  std::string center;
  std::string diastole = "12,20";
  std::string systole = "8,15";
  std::string levels = "0.2,0.55,0.9";
  float noise = 0.02f;
  float taper = 0.3f;
  std::uint64_t seed = 1;
  std::string spacing = "1.25,1.25,8,1";
};

std::string phantom_digest(const PhantomSpec& spec) {
  std::ostringstream os;
  os << "center=" << num(spec.center.x) << ',' << num(spec.center.y) << ','
     << num(spec.center.z) << ";diastole=" << num(spec.inner_diastole) << ','
     << num(spec.outer_diastole) << ";dims=" << spec.dims.t << ','
     << spec.dims.z << ',' << spec.dims.y << ',' << spec.dims.x
     << ";levels=" << num(spec.intensity_background) << ','
     << num(spec.intensity_myocardium) << ',' << num(spec.intensity_blood)
     << ";noise=" << num(spec.noise_amplitude) << ";seed=" << spec.seed
     << ";spacing=" << num(spec.spacing.sx) << ',' << num(spec.spacing.sy)
     << ',' << num(spec.spacing.sz) << ',' << num(spec.spacing.dt)
     << ";systole=" << num(spec.inner_systole) << ','
     << num(spec.outer_systole) << ";taper=" << num(spec.apex_taper);
  const std::uint64_t h = fnv1a64(os.str());
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[i] = hex[(h >> (60 - 4 * i)) & 0xF];
  return std::string(buf, 16);
}

int run_phantom_cmd(const PhantomArgs& args) {
  PhantomSpec spec;
  spec.dims = {args.frames, args.slices, args.height, args.width};
  if (args.center.empty()) {
    spec.center = {0.5f * args.width, 0.5f * args.height, 0.5f * args.slices};
  } else {
    const auto c = parse_floats(args.center, 3, "--center");
    spec.center = {c[0], c[1], c[2]};
  }
  const auto dia = parse_floats(args.diastole, 2, "--diastole");
  const auto sys = parse_floats(args.systole, 2, "--systole");
  spec.inner_diastole = dia[0];
  spec.outer_diastole = dia[1];
  spec.inner_systole = sys[0];
  spec.outer_systole = sys[1];
  const auto levels = parse_floats(args.levels, 3, "--levels");
  spec.intensity_background = levels[0];
  spec.intensity_myocardium = levels[1];
  spec.intensity_blood = levels[2];
  spec.noise_amplitude = args.noise;
  spec.apex_taper = args.taper;
  spec.seed = args.seed;
  const auto sp = parse_floats(args.spacing, 4, "--spacing");
  spec.spacing = {sp[0], sp[1], sp[2], sp[3]};

  const PhantomOutput out = generate(spec);
  write_container(args.out, out.volume);
  std::cout << "phantom: " << args.out << " dims=(" << spec.dims.t << ','
            << spec.dims.z << ',' << spec.dims.y << ',' << spec.dims.x
            << ") seed=" << spec.seed << " (digest " << phantom_digest(spec)
            << ")\n";
  if (!args.masks.empty()) {
    write_container(args.masks, to_volume(out.myocardium, spec.spacing));
    std::cout << "masks: " << args.masks << '\n';
  }
  return 0;
}

// ---- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string pred;
  std::string roi;
  std::string labels;
  std::string baseline;
  std::string report_path;
  std::string report_json_path;
  PipelineFlags flags;
};

int run_eval_cmd(const EvalArgs& args) {
  if (args.pred.empty() == args.roi.empty())
    throw UsageError("eval needs exactly one of --pred or --roi");
  const PipelineConfig cfg = args.flags.to_config();

  const Mask4 labels = to_mask(read_volume(args.labels), 0.5f);
  Mask4 predicted;
  if (!args.pred.empty()) {
    predicted = to_mask(read_volume(args.pred), 0.5f);
  } else {
    const Volume4D roi = read_volume(args.roi);
    predicted = threshold_segmenter(roi, cfg.segment_percentile);
  }

  std::optional<Mask4> baseline;
  if (!args.baseline.empty())
    baseline = to_mask(read_volume(args.baseline), 0.5f);

  EvalOptions options;
  options.min_pixels = cfg.min_pixels;
  options.config_digest = cfg.digest();
  const EvalReport report = evaluate(predicted, labels, options,
                                     baseline ? &*baseline : nullptr);

  const std::string text = report.to_text();
  std::cout << text;
  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open for writing: " + args.report_path);
    out << text;
  }
  if (!args.report_json_path.empty()) {
    std::ofstream out(args.report_json_path,
                      std::ios::binary | std::ios::trunc);
    if (!out)
      throw DataError("cannot open for writing: " + args.report_json_path);
    out << report.to_json();
  }
  return 0;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  int frames = 20, slices = 10, height = 256, width = 256;
  std::uint64_t seed = 1;
  int runs = 3;
  std::string report_path;
  PipelineFlags flags;
};

double median_time(const std::vector<double>& times) {
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  return sorted[sorted.size() / 2];
}

int run_bench_cmd(const BenchArgs& args) {
  if (args.runs < 1) throw UsageError("--runs must be >= 1");
  const PipelineConfig cfg = args.flags.to_config();

  PhantomSpec spec;
  spec.dims = {args.frames, args.slices, args.height, args.width};
  spec.center = {0.5f * args.width, 0.5f * args.height, 0.5f * args.slices};
  const float base_radius =
      0.12f * static_cast<float>(std::min(args.height, args.width));
  spec.inner_diastole = base_radius * 0.6f;
  spec.outer_diastole = base_radius;
  spec.inner_systole = base_radius * 0.45f;
  spec.outer_systole = base_radius * 0.78f;
  spec.seed = args.seed;
  const PhantomOutput phantom = generate(spec);

  const Volume4D normalized = normalize(phantom.volume, cfg.focus.epsilon);
  const FocusResult focus = run_focus(phantom.volume, cfg.focus);
  const auto [roi, box] = extract_roi(normalized, focus, cfg.roi);
  const Mask4 roi_labels = apply_roi_mask(phantom.myocardium, box);

  // Wall clock around the segmentation call only; median of N runs.
  auto time_segmenter = [&](const Volume4D& v) {
    std::vector<double> times;
    for (int i = 0; i < args.runs; ++i) {
      const auto start = std::chrono::steady_clock::now();
      volatile std::size_t sink = threshold_segmenter(v, cfg.segment_percentile)
                                      .count_set();
      (void)sink;
      times.push_back(std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count());
    }
    return median_time(times);
  };

  const double base_s = time_segmenter(normalized);
  const double ours_s = time_segmenter(roi);

  EvalOptions options;
  options.min_pixels = cfg.min_pixels;
  options.config_digest = cfg.digest();
  EvalReport report = evaluate(threshold_segmenter(roi, cfg.segment_percentile),
                               roi_labels, options);
  report.has_timing = true;
  report.base_time_s = base_s;
  report.ours_time_s = ours_s;
  report.speedup = speedup(base_s, ours_s);

  std::ostringstream os;
  os << "full_voxels=" << normalized.dims().voxels() << '\n'
     << "roi_voxels=" << roi.dims().voxels() << '\n'
     << report.to_text();
  std::cout << os.str();
  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open for writing: " + args.report_path);
    out << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heart localization and ROI extraction for 4D cardiac MRI"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MFOCUS_VERSION));
  // Options may come from an INI/TOML file with one section per
  // subcommand, e.g. [phantom] seed=7.
  app.set_config("--config", "", "Read options from a config file");

  FocusArgs focus_args;
  auto* focus_cmd = app.add_subcommand(
      "focus", "Localize the heart and write an ROI manifest");
  focus_cmd->add_option("-i,--in", focus_args.inputs,
                        "Input volumes (.nii, .nii.gz or .t4d)")
      ->required();
  focus_cmd->add_option("-m,--manifest", focus_args.manifest_path,
                        "Manifest output path")
      ->capture_default_str();
  focus_cmd->add_option("--heatmaps", focus_args.heatmap_dir,
                        "Directory for mid-slice PGM heatmaps");
  focus_cmd->add_option("--fields", focus_args.fields_dir,
                        "Directory for fused/rbf/mask containers");
  focus_cmd->add_option("-j,--jobs", focus_args.jobs,
                        "Process inputs in parallel")
      ->capture_default_str()->envname("MFOCUS_JOBS");
  add_pipeline_flags(focus_cmd, focus_args.flags);

  CropArgs crop_args;
  auto* crop_cmd =
      app.add_subcommand("crop", "Apply a manifest to volumes and masks");
  crop_cmd->add_option("-i,--in", crop_args.inputs, "Input volumes")
      ->required();
  crop_cmd->add_option("-m,--manifest", crop_args.manifest_path,
                       "Manifest from a focus run")
      ->required();
  crop_cmd->add_option("--masks", crop_args.masks,
                       "Label masks cropped with the same geometry");
  crop_cmd->add_option("-o,--out-dir", crop_args.out_dir, "Output directory")
      ->capture_default_str();
  crop_cmd->add_option("--epsilon", crop_args.epsilon,
                       "Normalization guard constant")
      ->capture_default_str()->envname("MFOCUS_EPSILON");

  PhantomArgs phantom_args;
  auto* phantom_cmd = app.add_subcommand(
      "phantom", "Generate a deterministic beating-annulus volume");
  phantom_cmd->add_option("-o,--out", phantom_args.out, "Volume output path")
      ->capture_default_str();
  phantom_cmd->add_option("--masks", phantom_args.masks,
                          "Ground-truth ring mask output path");
  phantom_cmd->add_option("--frames", phantom_args.frames, "Frames (T)")
      ->capture_default_str();
  phantom_cmd->add_option("--slices", phantom_args.slices, "Slices (Z)")
      ->capture_default_str();
  phantom_cmd->add_option("--height", phantom_args.height, "Height (Y)")
      ->capture_default_str();
  phantom_cmd->add_option("--width", phantom_args.width, "Width (X)")
      ->capture_default_str();
  phantom_cmd->add_option("--center", phantom_args.center,
                          "Ring center x,y,z (default: grid center)");
  phantom_cmd->add_option("--diastole", phantom_args.diastole,
                          "inner,outer ring radii at diastole")
      ->capture_default_str();
  phantom_cmd->add_option("--systole", phantom_args.systole,
                          "inner,outer ring radii at systole")
      ->capture_default_str();
  phantom_cmd->add_option("--levels", phantom_args.levels,
                          "background,myocardium,blood intensities")
      ->capture_default_str();
  phantom_cmd->add_option("--noise", phantom_args.noise, "Noise amplitude")
      ->capture_default_str();
  phantom_cmd->add_option("--taper", phantom_args.taper,
                          "Radius fraction lost at the apex slice")
      ->capture_default_str();
  phantom_cmd->add_option("--seed", phantom_args.seed, "Noise seed")
      ->capture_default_str()->envname("MFOCUS_SEED");
  phantom_cmd->add_option("--spacing", phantom_args.spacing,
                          "Voxel spacing sx,sy,sz,dt")
      ->capture_default_str();

  EvalArgs eval_args;
  auto* eval_cmd =
      app.add_subcommand("eval", "Compare predictions against labels");
  eval_cmd->add_option("--pred", eval_args.pred, "Prediction mask volume");
  eval_cmd->add_option("--roi", eval_args.roi,
                       "ROI volume segmented by the threshold backend");
  eval_cmd->add_option("--labels", eval_args.labels, "Label mask volume")
      ->required();
  eval_cmd->add_option("--baseline", eval_args.baseline,
                       "Second prediction set for the McNemar test");
  eval_cmd->add_option("--report", eval_args.report_path,
                       "Write the key=value report here");
  eval_cmd->add_option("--report-json", eval_args.report_json_path,
                       "Write the JSON report here");
  add_pipeline_flags(eval_cmd, eval_args.flags);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Time the segmenter with and without the ROI crop");
  bench_cmd->add_option("--frames", bench_args.frames, "Frames (T)")
      ->capture_default_str();
  bench_cmd->add_option("--slices", bench_args.slices, "Slices (Z)")
      ->capture_default_str();
  bench_cmd->add_option("--height", bench_args.height, "Height (Y)")
      ->capture_default_str();
  bench_cmd->add_option("--width", bench_args.width, "Width (X)")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "Phantom seed")
      ->capture_default_str()->envname("MFOCUS_SEED");
  bench_cmd->add_option("--runs", bench_args.runs, "Timed runs per variant")
      ->capture_default_str();
  bench_cmd->add_option("--report", bench_args.report_path,
                        "Write the timing report here");
  add_pipeline_flags(bench_cmd, bench_args.flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (focus_cmd->parsed()) return run_focus_cmd(focus_args);
    if (crop_cmd->parsed()) return run_crop_cmd(crop_args);
    if (phantom_cmd->parsed()) return run_phantom_cmd(phantom_args);
    if (eval_cmd->parsed()) return run_eval_cmd(eval_args);
    if (bench_cmd->parsed()) return run_bench_cmd(bench_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
