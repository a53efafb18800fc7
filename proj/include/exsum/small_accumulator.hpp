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

#include <array>
#include <cstdint>
#include <span>

#include "exsum/fpbits.hpp"

namespace exsum {

/* Constants defining the small accumulator format. */

inline constexpr int kLowExpBits = 5;    // exponent bits giving bit position
inline constexpr int kLowExpMask = (1 << kLowExpBits) - 1;
inline constexpr int kHighExpBits = kExpBits - kLowExpBits;  // chunk index
inline constexpr int kSmallChunks = (1 << kHighExpBits) + 3;
inline constexpr int kLowMantissaBits = 1 << kLowExpBits;
inline constexpr std::int64_t kLowMantissaMask =
    (std::int64_t{1} << kLowMantissaBits) - 1;
inline constexpr int kSmallCarryBits = 63 - kMantissaBits;
inline constexpr int kSmallCarryTerms = (1 << kSmallCarryBits) - 1;

// Exact summation of 64-bit floats in 67 overlapping signed 64-bit chunks.
//
// Chunk i carries weight 2^(32i - 1075); adjacent chunks overlap by 32
// bits, so carries can be left unpropagated for up to kSmallCarryTerms
// additions.  The represented value is the exact sum of everything added,
// for any mix of up to 2^45 terms, even when partial sums would overflow
// the double range.  round() extracts the nearest double, ties to even.
//
// Instances are single-owner mutable state; they may be moved freely
// between threads but must not be mutated concurrently.
class SmallAccumulator {
 public:
  SmallAccumulator() = default;

  // Adds one value.  The represented value grows by exactly v for finite
  // v; +-0.0 is a no-op; Inf and NaN are recorded in the special fields.
  // Propagates carries first when the add budget is exhausted.
  void add(double v);

  // Adds every element in order.  Structured so the inner loop carries no
  // propagation check; the budget is debited once per element.
  void add(std::span<const double> values);

  // Adds the exact value held by another accumulator, combining Inf/NaN
  // state under the same rules as adding the original values.  Cost is
  // comparable to a rounding pass.
  void merge(const SmallAccumulator &other);

  // Nearest double, ties to even.  NaN state takes precedence over Inf;
  // exact zero returns +0.0; values beyond the finite range return +-Inf.
  // Carry propagation runs first, so the accumulator may be normalized in
  // place, but the value it represents does not change.
  double round();

  // Correctly rounded (value / n) for positive integer n, computed by
  // exact integer division of the fixed-point magnitude, never by float
  // division.  Throws std::invalid_argument when n is zero.
  double mean(std::uint64_t n);

  // Records an Inf or NaN input given its bit pattern (exponent field
  // must be all ones).  First NaN wins and keeps its payload verbatim;
  // infinities of both signs make the eventual result NaN.
  void add_inf_nan(std::uint64_t bits);

  // Clears the high 32 bits of each chunk into the next one up, leaving
  // every chunk in [0, 2^32) except possibly the top nonzero chunk which
  // lands in [-2^32, 2^32).  Resets the add budget.  Returns the index of
  // the highest-order nonzero chunk, or -1 if the value is exactly zero.
  int carry_propagate();

  std::span<const std::int64_t, kSmallChunks> chunks() const {
    return chunks_;
  }
  int adds_until_propagate() const { return adds_until_propagate_; }
  std::uint64_t inf_bits() const { return inf_bits_; }
  std::uint64_t nan_bits() const { return nan_bits_; }

 private:
  friend class LargeAccumulator;  // chunk-level access for transfers

  bool add_no_carry(double v);  // true iff chunks were modified

  std::array<std::int64_t, kSmallChunks> chunks_{};
  std::uint64_t inf_bits_ = 0;  // bit pattern of an absorbed infinity
  std::uint64_t nan_bits_ = 0;  // bit pattern of the first absorbed NaN
  int adds_until_propagate_ = kSmallCarryTerms;
};

}  // namespace exsum
