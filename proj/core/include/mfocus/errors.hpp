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

#ifndef MFOCUS_ERRORS_HPP
#define MFOCUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mfocus {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (bad files, non-finite voxels,
/// shape mismatches). Maps to exit code 2 in the CLI.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid arguments or configuration. Maps to exit code 1 in the CLI.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// The energy field carries no usable signal (zero total energy or an
/// empty threshold mask). run_focus catches this and falls back to the
/// geometric center.
class DegenerateEnergyError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfocus

#endif  // MFOCUS_ERRORS_HPP
