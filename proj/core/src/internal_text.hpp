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

// Internal helpers shared by the serialization code. Not installed.

#ifndef MFOCUS_INTERNAL_TEXT_HPP
#define MFOCUS_INTERNAL_TEXT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace mfocus::internal {

// Shortest round-trip decimal form; deterministic across runs.
template <typename T>
std::string format_number(T value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

}  // namespace mfocus::internal

#endif  // MFOCUS_INTERNAL_TEXT_HPP
