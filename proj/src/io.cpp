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

#include "exsum/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "exsum/fpbits.hpp"

namespace exsum {

namespace {

std::uint64_t byteswap64(std::uint64_t x) {
  return __builtin_bswap64(x);
}

// Files are little-endian regardless of host order.
std::uint64_t to_file_order(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::big) {
    return byteswap64(x);
  }
  return x;
}

[[noreturn]] void fail(const std::filesystem::path &path,
                       const std::string &what) {
  throw std::runtime_error(path.string() + ": " + what);
}

double parse_text_value(const std::filesystem::path &path, std::size_t lineno,
                        const std::string &token) {
  if (token.size() > 2 && token[0] == '0' &&
      (token[1] == 'x' || token[1] == 'X')) {
    std::uint64_t bits = 0;
    const char *first = token.data() + 2;
    const char *last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, bits, 16);
    if (ec != std::errc() || ptr != last) {
      fail(path, "bad bit pattern on line " + std::to_string(lineno));
    }
    return from_bits(bits);
  }
  char *end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || end != token.c_str() + token.size()) {
    fail(path, "bad value on line " + std::to_string(lineno));
  }
  return v;
}

}  // namespace

FileFormat parse_format(std::string_view name) {
  if (name == "bin") {
    return FileFormat::bin;
  }
  if (name == "text") {
    return FileFormat::text;
  }
  throw std::invalid_argument("unknown format: " + std::string(name));
}

std::vector<double> read_values(const std::filesystem::path &path,
                                FileFormat format) {
  std::ifstream in(path, format == FileFormat::bin
                             ? std::ios::binary | std::ios::in
                             : std::ios::in);
  if (!in) {
    fail(path, "cannot open");
  }
  std::vector<double> values;
  if (format == FileFormat::bin) {
    in.seekg(0, std::ios::end);
    const auto size = static_cast<std::uint64_t>(in.tellg());
    in.seekg(0, std::ios::beg);
    if (size % sizeof(double) != 0) {
      fail(path, "size is not a multiple of 8 bytes");
    }
    values.resize(size / sizeof(double));
    in.read(reinterpret_cast<char *>(values.data()),
            static_cast<std::streamsize>(size));
    if (!in && size != 0) {
      fail(path, "short read");
    }
    if constexpr (std::endian::native == std::endian::big) {
      for (double &v : values) {
        v = from_bits(byteswap64(to_bits(v)));
      }
    }
  } else {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream fields(line);
      std::string token;
      if (!(fields >> token)) {
        continue;  // blank line
      }
      values.push_back(parse_text_value(path, lineno, token));
    }
    if (in.bad()) {
      fail(path, "read error");
    }
  }
  return values;
}

void write_values(const std::filesystem::path &path,
                  std::span<const double> values, FileFormat format) {
  std::ofstream out(path, format == FileFormat::bin
                              ? std::ios::binary | std::ios::out
                              : std::ios::out);
  if (!out) {
    fail(path, "cannot open for writing");
  }
  if (format == FileFormat::bin) {
    for (const double v : values) {
      const std::uint64_t bits = to_file_order(to_bits(v));
      out.write(reinterpret_cast<const char *>(&bits), sizeof(bits));
    }
  } else {
    char buf[40];
    for (const double v : values) {
      if (std::isfinite(v)) {
        // 17 significant digits round-trip any finite double.
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
      } else {
        // Bit patterns keep NaN payloads and infinity signs exact.
        std::snprintf(buf, sizeof(buf), "0x%016llx\n",
                      static_cast<unsigned long long>(to_bits(v)));
      }
      out << buf;
    }
  }
  if (!out) {
    fail(path, "write error");
  }
}

}  // namespace exsum
