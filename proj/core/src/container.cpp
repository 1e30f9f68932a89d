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

#include "mfocus/container.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "internal_text.hpp"
#include "mfocus/errors.hpp"

namespace mfocus {

namespace {

constexpr char kMagic[] = "T4D1";

static_assert(std::endian::native == std::endian::little,
              "container payload is little-endian; add byte swapping for "
              "big-endian hosts");

struct Header {
  std::string axes;
  std::vector<int> dims;
  std::string dtype;
  std::vector<float> spacing;
};

Header read_header(std::istream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw DataError(path + ": not a tensor container (bad magic)");
  Header h;
  bool saw_data = false;
  while (std::getline(in, line)) {
    if (line == "data") {
      saw_data = true;
      break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError(path + ": malformed container header line: " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "axes") {
      h.axes = value;
    } else if (key == "dims" || key == "spacing") {
      std::istringstream ss(value);
      std::string tok;
      try {
        while (std::getline(ss, tok, ',')) {
          if (key == "dims")
            h.dims.push_back(std::stoi(tok));
          else
            h.spacing.push_back(std::stof(tok));
        }
      } catch (const std::exception&) {
        throw DataError(path + ": malformed container " + key + ": " + value);
      }
    } else if (key == "dtype") {
      h.dtype = value;
    }
    // Unknown keys are ignored for forward compatibility.
  }
  if (!saw_data)
    throw DataError(path + ": container header missing data marker");
  if (h.axes.empty() || h.dims.empty() || h.dtype.empty())
    throw DataError(path + ": container header missing required keys");
  if (h.dtype != "f32le")
    throw DataError(path + ": unsupported container dtype " + h.dtype);
  for (int d : h.dims)
    if (d < 1) throw DataError(path + ": container dims must be positive");
  return h;
}

std::vector<float> read_payload(std::istream& in, std::size_t expected,
                                const std::string& path) {
  std::vector<float> data(expected);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(expected * sizeof(float)));
  if (static_cast<std::size_t>(in.gcount()) != expected * sizeof(float))
    throw DataError(path + ": container payload shorter than header dims");
  char extra;
  if (in.read(&extra, 1); in.gcount() != 0)
    throw DataError(path + ": container payload longer than header dims");
  return data;
}

void write_payload(std::ostream& out, std::span<const float> data) {
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(float)));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  return in;
}

}  // namespace

void write_container(const std::string& path, const Volume4D& v) {
  using internal::format_number;
  if (v.empty()) throw DataError("refusing to write an empty volume");
  std::ofstream out = open_out(path);
  const Dims4& d = v.dims();
  const Spacing& s = v.spacing();
  out << kMagic << '\n';
  out << "axes=t,z,y,x\n";
  out << "dims=" << d.t << ',' << d.z << ',' << d.y << ',' << d.x << '\n';
  out << "dtype=f32le\n";
  out << "spacing=" << format_number(s.sx) << ',' << format_number(s.sy) << ','
      << format_number(s.sz) << ',' << format_number(s.dt) << '\n';
  out << "data\n";
  write_payload(out, v.values());
  if (!out) throw DataError("write failed: " + path);
}

void write_container(const std::string& path, const Volume3D& v) {
  if (v.empty()) throw DataError("refusing to write an empty volume");
  std::ofstream out = open_out(path);
  const Dims3& d = v.dims();
  out << kMagic << '\n';
  out << "axes=z,y,x\n";
  out << "dims=" << d.z << ',' << d.y << ',' << d.x << '\n';
  out << "dtype=f32le\n";
  out << "data\n";
  write_payload(out, v.values());
  if (!out) throw DataError("write failed: " + path);
}

Volume4D read_container4(const std::string& path) {
  std::ifstream in = open_in(path);
  const Header h = read_header(in, path);
  if (h.axes != "t,z,y,x")
    throw DataError(path + ": expected a 4D container (axes t,z,y,x)");
  if (h.dims.size() != 4)
    throw DataError(path + ": 4D container needs 4 dims");
  Dims4 dims{h.dims[0], h.dims[1], h.dims[2], h.dims[3]};
  Spacing spacing;
  if (h.spacing.size() == 4)
    spacing = {h.spacing[0], h.spacing[1], h.spacing[2], h.spacing[3]};
  std::vector<float> data = read_payload(in, dims.voxels(), path);
  return Volume4D(dims, std::move(data), spacing);
}

Volume3D read_container3(const std::string& path) {
  std::ifstream in = open_in(path);
  const Header h = read_header(in, path);
  if (h.axes != "z,y,x")
    throw DataError(path + ": expected a 3D container (axes z,y,x)");
  if (h.dims.size() != 3)
    throw DataError(path + ": 3D container needs 3 dims");
  Dims3 dims{h.dims[0], h.dims[1], h.dims[2]};
  std::vector<float> data = read_payload(in, dims.voxels(), path);
  return Volume3D(dims, std::move(data));
}

}  // namespace mfocus
