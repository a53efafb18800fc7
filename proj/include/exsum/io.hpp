// Copyright 2026 The exsum Authors
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

#pragma once

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace exsum {

// Value array file formats:
//   bin  - raw little-endian IEEE-754 doubles, 8 bytes each
//   text - one value per line, either decimal or a 0x-prefixed
//          16-hex-digit bit pattern (needed to state NaN payloads and
//          denormals unambiguously)
enum class FileFormat { bin, text };

FileFormat parse_format(std::string_view name);  // "bin" | "text"

// Both throw std::runtime_error on I/O failure, a bin file whose size is
// not a multiple of 8, or an unparsable text line.
std::vector<double> read_values(const std::filesystem::path &path,
                                FileFormat format);
void write_values(const std::filesystem::path &path,
                  std::span<const double> values, FileFormat format);

}  // namespace exsum
