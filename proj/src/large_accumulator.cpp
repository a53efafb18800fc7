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

#include "exsum/large_accumulator.hpp"

#include <bit>
#include <cassert>

namespace exsum {

LargeAccumulator::LargeAccumulator() {
  // Counts start at -1 (not in use).  The chunk words are deliberately
  // not initialized; a chunk is zeroed on first use, before any read.
  counts_.fill(-1);
}

void LargeAccumulator::add(std::span<const double> values) {
  for (const double v : values) {
    add(v);
  }
}

void LargeAccumulator::add_special(unsigned ix, std::uint64_t bits) {
  if ((ix & static_cast<unsigned>(kExpMask)) ==
      static_cast<unsigned>(kExpMask)) {
    // Inf or NaN: record it in the small accumulator's special fields and
    // leave the count at -1 so later specials take this path again.
    small_.add_inf_nan(bits);
    return;
  }
  if (counts_[ix] < 0) {
    chunks_[ix] = 0;  // first use of this chunk
  } else {
    // 4096 adds done: move the accumulated mantissas out before reuse.
    assert(counts_[ix] == 0);
    transfer_chunk(ix);
    chunks_[ix] = 0;
  }
  counts_[ix] = kLargeChunkAdds;
  chunks_used_[ix >> 6] |= std::uint64_t{1} << (ix & 63);
  used_used_ |= std::uint64_t{1} << (ix >> 6);

  // The pending add now proceeds as usual.
  counts_[ix] = static_cast<std::int16_t>(counts_[ix] - 1);
  chunks_[ix] += bits;
}

void LargeAccumulator::transfer_chunk(unsigned ix) {
  assert(counts_[ix] >= 0 && counts_[ix] <= kLargeChunkAdds);

  // Three small-accumulator chunks are adjusted, each by less than 2^32,
  // which stays well inside one add's worth of headroom; debit the budget
  // by three all the same.
  if (small_.adds_until_propagate() < 3) {
    small_.carry_propagate();
  }

  const int count = counts_[ix];
  std::uint64_t chunk = chunks_[ix];

  // The chunk holds the wrapped sum of whole 64-bit patterns.  Each add
  // contributed the same sign+exponent bits (the index) at the top; after
  // a full 4096 adds those have self-cancelled modulo 2^64.  For fewer
  // adds, adding index * remaining-count, positioned at the mantissa top,
  // completes the multiple of 2^64 and leaves only the mantissa sum.
  if (count > 0) {
    chunk += (static_cast<std::uint64_t>(count) * ix) << kMantissaBits;
  }

  const unsigned exp = ix & static_cast<unsigned>(kExpMask);
  const int low_exp = exp == 0 ? 1 : static_cast<int>(exp) & kLowExpMask;
  const int high_exp = exp == 0 ? 0 : static_cast<int>(exp) >> kLowExpBits;

  // Conceptually the 64-bit mantissa sum is shifted left by low_exp
  // within a 96-bit window and cut into three 32-bit pieces; done with
  // 64-bit shifts and masks only.  For nonzero exponents the implicit 1s
  // (one per add) sit just above the mantissa sum, at window bit
  // 52 + low_exp.
  const std::uint64_t low_piece =
      (chunk << low_exp) & static_cast<std::uint64_t>(kLowMantissaMask);
  std::uint64_t middle = chunk >> (kLowMantissaBits - low_exp);
  if (exp != 0) {
    middle += static_cast<std::uint64_t>(kLargeChunkAdds - count)
              << (kMantissaBits - kLowMantissaBits + low_exp);
  }
  const std::uint64_t high_piece = middle >> kLowMantissaBits;
  middle &= static_cast<std::uint64_t>(kLowMantissaMask);

  auto &small_chunks = small_.chunks_;
  if (ix >> kExpBits) {  // sign bit is the top bit of the 12-bit index
    small_chunks[high_exp] -= static_cast<std::int64_t>(low_piece);
    small_chunks[high_exp + 1] -= static_cast<std::int64_t>(middle);
    small_chunks[high_exp + 2] -= static_cast<std::int64_t>(high_piece);
  } else {
    small_chunks[high_exp] += static_cast<std::int64_t>(low_piece);
    small_chunks[high_exp + 1] += static_cast<std::int64_t>(middle);
    small_chunks[high_exp + 2] += static_cast<std::int64_t>(high_piece);
  }
  small_.adds_until_propagate_ -= 3;
}

void LargeAccumulator::drain() {
  while (used_used_ != 0) {
    const int word = std::countr_zero(used_used_);
    std::uint64_t flags = chunks_used_[word];
    while (flags != 0) {
      const int bit = std::countr_zero(flags);
      const unsigned ix = static_cast<unsigned>(word * 64 + bit);
      if (counts_[ix] >= 0) {
        if (counts_[ix] < kLargeChunkAdds) {  // skip chunks with no adds
          transfer_chunk(ix);
        }
        counts_[ix] = -1;
      }
      flags &= flags - 1;
    }
    chunks_used_[word] = 0;
    used_used_ &= used_used_ - 1;
  }
}

double LargeAccumulator::round() {
  drain();
  return small_.round();
}

double LargeAccumulator::mean(std::uint64_t n) {
  drain();
  return small_.mean(n);
}

int LargeAccumulator::chunks_in_use() const {
  int used = 0;
  for (int i = 0; i < kLargeChunks; ++i) {
    used += counts_[i] >= 0;
  }
  return used;
}

}  // namespace exsum
