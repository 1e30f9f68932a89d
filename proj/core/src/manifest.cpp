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

#include "mfocus/manifest.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "internal_text.hpp"
#include "mfocus/errors.hpp"

namespace mfocus {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string PipelineConfig::canonical() const {
  using internal::format_number;
  std::ostringstream os;
  os << "epsilon=" << format_number(focus.epsilon);
  os << ";k=" << format_number(roi.k);
  os << ";min_pixels=" << min_pixels;
  os << ";multiple=" << roi.multiple;
  os << ";multiple_enforced=" << (roi.enforce_multiple ? 1 : 0);
  os << ";percentile=" << format_number(focus.percentile);
  os << ";scale_coefficient=" << format_number(focus.scale_coefficient);
  os << ";segment_percentile=" << format_number(segment_percentile);
  os << ";smooth_sigma=" << format_number(focus.smooth_sigma);
  os << ";static_frame="
     << (focus.static_frame == StaticFrame::kTimeMean ? "mean" : "first");
  os << ";target=" << roi.target_h << 'x' << roi.target_w;
  os << ";temporal_boundary="
     << (focus.temporal_boundary == Boundary::kReplicate ? "replicate"
                                                         : "periodic");
  os << ";weights=" << format_number(focus.weights.ws) << ','
     << format_number(focus.weights.wt);
  return os.str();
}

std::string PipelineConfig::digest() const {
  const std::uint64_t h = fnv1a64(canonical());
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i)
    buf[i] = hex[(h >> (60 - 4 * i)) & 0xF];
  buf[16] = '\0';
  return std::string(buf);
}

namespace {

json box_to_json(const RoiBox& box) {
  return json{{"x", {box.x.lo, box.x.hi}},
              {"y", {box.y.lo, box.y.hi}},
              {"z", {box.z.lo, box.z.hi}},
              {"target", {box.target_h, box.target_w}}};
}

RoiBox box_from_json(const json& j, Dims3 source) {
  RoiBox box;
  box.x = {j.at("x").at(0).get<int>(), j.at("x").at(1).get<int>()};
  box.y = {j.at("y").at(0).get<int>(), j.at("y").at(1).get<int>()};
  box.z = {j.at("z").at(0).get<int>(), j.at("z").at(1).get<int>()};
  box.target_h = j.at("target").at(0).get<int>();
  box.target_w = j.at("target").at(1).get<int>();
  box.source = source;
  return box;
}

void validate_record(const RoiRecord& r) {
  const Dims3 s = r.source_dims.spatial();
  const bool ok = r.box.x.lo >= 0 && r.box.x.lo < r.box.x.hi &&
                  r.box.x.hi <= s.x && r.box.y.lo >= 0 &&
                  r.box.y.lo < r.box.y.hi && r.box.y.hi <= s.y &&
                  r.box.z.lo >= 0 && r.box.z.lo < r.box.z.hi &&
                  r.box.z.hi <= s.z;
  if (!ok)
    throw DataError("manifest record for " + r.source +
                    " has box bounds outside the source dims");
}

}  // namespace

std::string to_json(const RoiManifest& manifest) {
  json j;
  j["config_digest"] = manifest.config_digest;
  json records = json::array();
  for (const RoiRecord& r : manifest.records) {
    json rec;
    rec["source"] = r.source;
    rec["dims"] = {r.source_dims.t, r.source_dims.z, r.source_dims.y,
                   r.source_dims.x};
    rec["spacing"] = {r.spacing.sx, r.spacing.sy, r.spacing.sz, r.spacing.dt};
    rec["box"] = box_to_json(r.box);
    rec["center"] = {r.center.x, r.center.y, r.center.z};
    rec["scale"] = r.scale;
    rec["threshold"] = r.threshold;
    rec["fallback"] = r.fallback;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  return j.dump(2) + "\n";
}

RoiManifest manifest_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed manifest JSON: ") + e.what());
  }
  RoiManifest m;
  try {
    m.config_digest = j.at("config_digest").get<std::string>();
    for (const json& rec : j.at("records")) {
      RoiRecord r;
      r.source = rec.at("source").get<std::string>();
      const json& dims = rec.at("dims");
      r.source_dims = {dims.at(0).get<int>(), dims.at(1).get<int>(),
                       dims.at(2).get<int>(), dims.at(3).get<int>()};
      const json& sp = rec.at("spacing");
      r.spacing = {sp.at(0).get<float>(), sp.at(1).get<float>(),
                   sp.at(2).get<float>(), sp.at(3).get<float>()};
      r.box = box_from_json(rec.at("box"), r.source_dims.spatial());
      const json& c = rec.at("center");
      r.center = {c.at(0).get<float>(), c.at(1).get<float>(),
                  c.at(2).get<float>()};
      r.scale = rec.at("scale").get<float>();
      r.threshold = rec.at("threshold").get<float>();
      r.fallback = rec.at("fallback").get<bool>();
      validate_record(r);
      m.records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("manifest JSON missing fields: ") + e.what());
  }
  return m;
}

void save_manifest(const std::string& path, const RoiManifest& manifest) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << to_json(manifest);
  if (!out) throw DataError("write failed: " + path);
}

RoiManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return manifest_from_json(ss.str());
}

}  // namespace mfocus
