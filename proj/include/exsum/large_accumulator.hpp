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

#include "exsum/small_accumulator.hpp"

namespace exsum {

/* Constants defining the large accumulator format. */

inline constexpr int kLargeChunks = 1 << (kExpBits + 1);  // 4096
inline constexpr int kLargeCountBits = 64 - kMantissaBits;
inline constexpr int kLargeChunkAdds = 1 << kLargeCountBits;  // 4096

// Exact summation with one 64-bit chunk per sign+exponent combination.
//
// Adding a value touches only the chunk indexed by its top 12 bits and
// the chunk's countdown, so the per-term cost is lower than the small
// accumulator's.  The whole 64-bit pattern is added unmasked; the
// sign/exponent bits accumulate in the top of the chunk and are cancelled
// when the chunk is transferred into the embedded small accumulator,
// which happens after 4096 adds to one chunk or on drain().
//
// Single-owner mutable state, movable between threads.  The parallel
// pattern is one accumulator per worker, then drain() and merge the
// embedded small accumulators.
class LargeAccumulator {
 public:
  LargeAccumulator();

  void add(double v) {
    const std::uint64_t bits = to_bits(v);
    const unsigned ix = static_cast<unsigned>(bits >> kMantissaBits);
    // Decrement before testing: one branch covers Inf/NaN input, a chunk
    // not yet in use, and a chunk that has reached its add limit.
    const std::int16_t count = static_cast<std::int16_t>(counts_[ix] - 1);
    if (count < 0) {
      add_special(ix, bits);
    } else {
      counts_[ix] = count;
      chunks_[ix] += bits;
    }
  }

  void add(std::span<const double> values);

  // Transfers every in-use chunk into the embedded small accumulator,
  // returning all counts to -1 and clearing the used flags.  The exact
  // value then resides entirely in the small accumulator (a drain
  // condenses; it does not clear the value).  Draining twice is a no-op.
  void drain();

  // drain() followed by rounding the embedded small accumulator.
  double round();

  // drain() followed by the small accumulator's exact mean.
  double mean(std::uint64_t n);

  const SmallAccumulator &small() const { return small_; }
  SmallAccumulator &small() { return small_; }

  std::span<const std::int16_t, kLargeChunks> counts() const {
    return counts_;
  }
  bool chunk_in_use(int ix) const {
    return (chunks_used_[ix >> 6] >> (ix & 63)) & 1;
  }
  // Raw chunk word; meaningful only while chunk_in_use(ix).
  std::uint64_t chunk_word(int ix) const { return chunks_[ix]; }
  int chunks_in_use() const;

 private:
  // Slow path for a negative decremented count: records Inf/NaN, or
  // initializes a first-use chunk, or transfers a full chunk, then
  // performs the pending add.
  void add_special(unsigned ix, std::uint64_t bits);

  // Adds the chunk's decoded partial sum into the embedded small
  // accumulator (three consecutive small chunks are adjusted).  Does not
  // reset the chunk or its count.
  void transfer_chunk(unsigned ix);

  std::array<std::uint64_t, kLargeChunks> chunks_;  // set on first use only
  std::array<std::int16_t, kLargeChunks> counts_;
  std::array<std::uint64_t, kLargeChunks / 64> chunks_used_{};
  std::uint64_t used_used_ = 0;
  SmallAccumulator small_;
};

}  // namespace exsum
