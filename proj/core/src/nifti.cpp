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

#include "mfocus/nifti.hpp"

#include <zlib.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <memory>
#include <vector>

#include "mfocus/errors.hpp"

namespace mfocus {

namespace {

// NIfTI-1 header, 348 bytes. Field offsets follow the published layout;
// the struct is naturally packed on all supported ABIs.
struct Nifti1Header {
  std::int32_t sizeof_hdr;    // 0: must be 348
  char data_type[10];         // 4
  char db_name[18];           // 14
  std::int32_t extents;       // 32
  std::int16_t session_error; // 36
  char regular;               // 38
  char dim_info;              // 39
  std::int16_t dim[8];        // 40
  float intent_p1;            // 56
  float intent_p2;            // 60
  float intent_p3;            // 64
  std::int16_t intent_code;   // 68
  std::int16_t datatype;      // 70
  std::int16_t bitpix;        // 72
  std::int16_t slice_start;   // 74
  float pixdim[8];            // 76
  float vox_offset;           // 108
  float scl_slope;            // 112
  float scl_inter;            // 116
  std::int16_t slice_end;     // 120
  char slice_code;            // 122
  char xyzt_units;            // 123
  float cal_max;              // 124
  float cal_min;              // 128
  float slice_duration;       // 132
  float toffset;              // 136
  std::int32_t glmax;         // 140
  std::int32_t glmin;         // 144
  char descrip[80];           // 148
  char aux_file[24];          // 228
  std::int16_t qform_code;    // 252
  std::int16_t sform_code;    // 254
  float quatern_b;            // 256
  float quatern_c;            // 260
  float quatern_d;            // 264
  float qoffset_x;            // 268
  float qoffset_y;            // 272
  float qoffset_z;            // 276
  float srow_x[4];            // 280
  float srow_y[4];            // 296
  float srow_z[4];            // 312
  char intent_name[16];       // 328
  char magic[4];              // 344
};
static_assert(sizeof(Nifti1Header) == 348, "NIfTI-1 header must be 348 bytes");

constexpr std::int16_t kDtInt16 = 4;
constexpr std::int16_t kDtFloat32 = 16;
constexpr std::int16_t kDtUint16 = 512;

inline std::uint16_t bswap16(std::uint16_t v) noexcept {
  return static_cast<std::uint16_t>((v >> 8) | (v << 8));
}
inline std::uint32_t bswap32(std::uint32_t v) noexcept {
  return (v >> 24) | ((v >> 8) & 0x0000FF00u) | ((v << 8) & 0x00FF0000u) |
         (v << 24);
}

inline void swap_inplace(std::int16_t& v) noexcept {
  std::uint16_t u;
  std::memcpy(&u, &v, 2);
  u = bswap16(u);
  std::memcpy(&v, &u, 2);
}
inline void swap_inplace(std::int32_t& v) noexcept {
  std::uint32_t u;
  std::memcpy(&u, &v, 4);
  u = bswap32(u);
  std::memcpy(&v, &u, 4);
}
inline void swap_inplace(float& v) noexcept {
  std::uint32_t u;
  std::memcpy(&u, &v, 4);
  u = bswap32(u);
  std::memcpy(&v, &u, 4);
}

void swap_header(Nifti1Header& h) {
  swap_inplace(h.sizeof_hdr);
  for (auto& d : h.dim) swap_inplace(d);
  swap_inplace(h.datatype);
  swap_inplace(h.bitpix);
  for (auto& p : h.pixdim) swap_inplace(p);
  swap_inplace(h.vox_offset);
  swap_inplace(h.scl_slope);
  swap_inplace(h.scl_inter);
}

struct GzCloser {
  void operator()(gzFile f) const noexcept {
    if (f) gzclose(f);
  }
};
using GzPtr = std::unique_ptr<gzFile_s, GzCloser>;

void read_exact(gzFile f, void* dst, std::size_t bytes, const std::string& path,
                const char* what) {
  std::size_t done = 0;
  auto* p = static_cast<unsigned char*>(dst);
  while (done < bytes) {
    const unsigned chunk = static_cast<unsigned>(
        std::min<std::size_t>(bytes - done, 1u << 28));
    const int got = gzread(f, p + done, chunk);
    if (got <= 0) throw DataError(path + ": truncated NIfTI " + what);
    done += static_cast<std::size_t>(got);
  }
}

float positive_or(float v, float fallback) noexcept {
  return v > 0.0f ? v : fallback;
}

}  // namespace

Volume4D read_nifti(const std::string& path) {
  static_assert(std::endian::native == std::endian::little,
                "reader assumes a little-endian host");

  GzPtr file(gzopen(path.c_str(), "rb"));
  if (!file) throw DataError("cannot open: " + path);

  Nifti1Header hdr{};
  read_exact(file.get(), &hdr, sizeof(hdr), path, "header");

  bool swapped = false;
  if (hdr.sizeof_hdr != 348) {
    std::int32_t alt = hdr.sizeof_hdr;
    swap_inplace(alt);
    if (alt != 348)
      throw DataError(path + ": not a NIfTI-1 file (sizeof_hdr != 348)");
    swapped = true;
    swap_header(hdr);
  }

  if (std::memcmp(hdr.magic, "ni1", 3) == 0)
    throw DataError(path + ": two-file NIfTI (.hdr/.img) is not supported");
  if (std::memcmp(hdr.magic, "n+1\0", 4) != 0)
    throw DataError(path + ": wrong NIfTI magic");

  const int ndim = hdr.dim[0];
  if (ndim < 1 || ndim > 7)
    throw DataError(path + ": invalid NIfTI dimension count");
  for (int i = 5; i <= ndim; ++i)
    if (hdr.dim[i] > 1)
      throw DataError(path + ": NIfTI dims beyond 4 are not supported");

  auto extent = [&](int i) {
    return (i <= ndim && hdr.dim[i] > 0) ? static_cast<int>(hdr.dim[i]) : 1;
  };
  const int nx = extent(1), ny = extent(2), nz = extent(3), nt = extent(4);

  std::size_t elem_size;
  switch (hdr.datatype) {
    case kDtInt16:
    case kDtUint16:
      elem_size = 2;
      break;
    case kDtFloat32:
      elem_size = 4;
      break;
    default:
      throw DataError(path + ": unsupported NIfTI datatype " +
                      std::to_string(hdr.datatype));
  }

  const auto offset = static_cast<z_off_t>(hdr.vox_offset);
  if (offset < static_cast<z_off_t>(sizeof(hdr)))
    throw DataError(path + ": invalid vox_offset");
  if (gzseek(file.get(), offset, SEEK_SET) < 0)
    throw DataError(path + ": truncated NIfTI payload");

  const std::size_t nvox = static_cast<std::size_t>(nx) * ny * nz * nt;
  std::vector<unsigned char> raw(nvox * elem_size);
  read_exact(file.get(), raw.data(), raw.size(), path, "payload");

  // Decode to float in file (x fastest) order.
  std::vector<float> decoded(nvox);
  switch (hdr.datatype) {
    case kDtInt16:
      for (std::size_t i = 0; i < nvox; ++i) {
        std::uint16_t u;
        std::memcpy(&u, raw.data() + 2 * i, 2);
        if (swapped) u = bswap16(u);
        std::int16_t s;
        std::memcpy(&s, &u, 2);
        decoded[i] = static_cast<float>(s);
      }
      break;
    case kDtUint16:
      for (std::size_t i = 0; i < nvox; ++i) {
        std::uint16_t u;
        std::memcpy(&u, raw.data() + 2 * i, 2);
        if (swapped) u = bswap16(u);
        decoded[i] = static_cast<float>(u);
      }
      break;
    case kDtFloat32:
      for (std::size_t i = 0; i < nvox; ++i) {
        std::uint32_t u;
        std::memcpy(&u, raw.data() + 4 * i, 4);
        if (swapped) u = bswap32(u);
        float v;
        std::memcpy(&v, &u, 4);
        decoded[i] = v;
      }
      break;
  }

  if (hdr.scl_slope != 0.0f)
    for (float& v : decoded) v = v * hdr.scl_slope + hdr.scl_inter;

  // Transpose header order (x,y,z,t) to internal (t,z,y,x).
  Dims4 dims{nt, nz, ny, nx};
  Spacing spacing{positive_or(hdr.pixdim[1], 1.0f),
                  positive_or(hdr.pixdim[2], 1.0f),
                  positive_or(hdr.pixdim[3], 1.0f),
                  positive_or(hdr.pixdim[4], 1.0f)};
  Volume4D out(dims, 0.0f, spacing);
  std::size_t src = 0;
  for (int t = 0; t < nt; ++t)
    for (int z = 0; z < nz; ++z)
      for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) out(t, z, y, x) = decoded[src++];
  return out;
}

}  // namespace mfocus
