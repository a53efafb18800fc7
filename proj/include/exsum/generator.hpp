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

#include <cstdint>
#include <vector>

namespace exsum {

// Multiplicative congruential generator x <- (a*x) mod m with the minstd
// constants a = 48271, m = 2^31 - 1.  The product stays below 2^47, so
// the recurrence is exact in 64-bit arithmetic on every platform.
class Mcg {
 public:
  explicit Mcg(std::uint64_t seed)
      : state_(seed % (kModulus - 1) + 1) {}

  std::uint32_t next() {
    state_ = (kMultiplier * state_) % kModulus;
    return static_cast<std::uint32_t>(state_);
  }

  // Uniform on the open interval (0, 1).
  double next_unit() {
    return static_cast<double>(next()) / static_cast<double>(kModulus);
  }

  static constexpr std::uint64_t kMultiplier = 48271;
  static constexpr std::uint64_t kModulus = (std::uint64_t{1} << 31) - 1;

 private:
  std::uint64_t state_;
};

struct GeneratorSpec {
  std::uint64_t n = 0;        // positive and even (values come in +/- pairs)
  std::uint64_t seed = 1;
  bool permute = false;
};

// Benchmark data: the first half holds independent values U1 * exp(30*U2)
// with U1, U2 uniform on (0,1); element n-1-i is the negation of element
// i, so the exact sum is zero.  With permute set, a Fisher-Yates shuffle
// driven by the same seed stream reorders the array (the multiset, and
// therefore the exact sum, is unchanged).  Identical spec gives identical
// bits on any platform with the same correctly-rounded exp().
// Throws std::invalid_argument when n is zero or odd.
std::vector<double> generate(const GeneratorSpec &spec);

}  // namespace exsum
