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

#include "exsum/small_accumulator.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <stdexcept>

namespace exsum {

namespace {

using uint128 = unsigned __int128;

constexpr std::uint64_t kCanonicalQnan = 0x7FF8000000000000ULL;

// Nonredundant base-2^32 magnitude of a propagated accumulator, plus one
// spare digit for the borrow that appears when the top chunk is -2^32.
struct Magnitude {
  std::array<std::uint32_t, kSmallChunks + 1> digits;
  int top;        // index of highest nonzero digit, -1 if zero
  bool negative;
};

// Requires the post-propagation form: chunks below `top` in [0, 2^32),
// chunks_[top] in [-2^32, 2^32) and nonzero.  With the top chunk negative
// the whole multiword value is negated, borrow-propagating from the
// bottom, so the magnitude digits come out nonredundant either way.
Magnitude extract_magnitude(std::span<const std::int64_t, kSmallChunks> chunks,
                            int top) {
  Magnitude m;
  m.digits.fill(0);
  m.negative = top >= 0 && chunks[top] < 0;
  int last = -1;
  if (top >= 0) {
    if (!m.negative) {
      for (int i = 0; i <= top; ++i) {
        m.digits[i] = static_cast<std::uint32_t>(chunks[i]);
        if (m.digits[i] != 0) last = i;
      }
    } else {
      std::int64_t borrow = 0;
      for (int i = 0; i <= top; ++i) {
        const std::int64_t v = borrow - chunks[i];
        m.digits[i] = static_cast<std::uint32_t>(v);
        borrow = v >> 32;
        if (m.digits[i] != 0) last = i;
      }
      // borrow is now 0 or 1; 1 only when the top chunk was -2^32.
      if (borrow != 0) {
        m.digits[top + 1] = static_cast<std::uint32_t>(borrow);
        last = top + 1;
      }
    }
  }
  m.top = last;
  return m;
}

int bit_length(std::span<const std::uint32_t> digits, int top) {
  return 32 * top + std::bit_width(digits[top]);
}

double make_signed(bool negative, std::uint64_t magnitude_bits) {
  return from_bits((negative ? kSignMask : 0) | magnitude_bits);
}

// Rounds (-1)^negative * (sum of digits[i] * 2^(32 i)) * 2^scale_pow2 to
// the nearest double, ties to even.  extra_sticky marks an additional
// positive quantity smaller than 2^scale_pow2 (used for division
// remainders).  The mantissa window is read from the top three relevant
// digits; everything below contributes only to the sticky bit.
double round_digits(std::span<const std::uint32_t> digits, int top,
                    bool negative, int scale_pow2, bool extra_sticky) {
  if (top < 0) {
    return extra_sticky ? make_signed(negative, 0) : 0.0;
  }
  const int msb = bit_length(digits, top) - 1;  // position within the digits
  const int exp_unbiased = msb + scale_pow2;

  if (exp_unbiased < -kExpBias + 1) {
    // Result is in the denormal range: round on the fixed 2^-1074 grid.
    // The digits span at most two words here (value < 2^52 * 2^shift with
    // small shift), so a 64-bit window holds all of them.
    const int shift = -(scale_pow2 + kExpBias + kMantissaBits - 1);
    assert(shift >= 1 && top <= 1);
    const std::uint64_t word =
        digits[0] | (top >= 1 ? (std::uint64_t{digits[1]} << 32) : 0);
    std::uint64_t units = word >> shift;
    const bool round_bit = (word >> (shift - 1)) & 1;
    const bool sticky =
        extra_sticky || (word & ((std::uint64_t{1} << (shift - 1)) - 1)) != 0;
    if (round_bit && (sticky || (units & 1))) {
      ++units;  // may land exactly on 2^52, the smallest normal
    }
    return make_signed(negative, units);
  }

  int exp_field = exp_unbiased + kExpBias;
  if (exp_field >= kExpMask) {
    return make_signed(negative,
                       std::uint64_t{kExpMask} << kMantissaBits);  // +-Inf
  }

  // 96-bit window of the top three digits; bit (64 + b) of the window is
  // the magnitude's most significant bit, where b = msb % 32.
  const int b = msb - 32 * top;
  const uint128 window = (uint128{digits[top]} << 64) |
                         (uint128{top >= 1 ? digits[top - 1] : 0} << 32) |
                         (top >= 2 ? digits[top - 2] : 0);
  const int drop = b + 10;  // leaves 55 bits: 53 mantissa + round + sticky
  std::uint64_t w =
      static_cast<std::uint64_t>(window >> drop) & ((std::uint64_t{1} << 55) - 1);
  bool sticky = extra_sticky || (window & ((uint128{1} << drop) - 1)) != 0;
  for (int i = 0; !sticky && i < top - 2; ++i) {
    sticky = digits[i] != 0;
  }
  std::uint64_t mantissa = w >> 2;  // includes the leading 1
  const bool round_bit = (w >> 1) & 1;
  sticky = sticky || (w & 1);
  if (round_bit && (sticky || (mantissa & 1))) {
    ++mantissa;
    if (mantissa == (std::uint64_t{1} << (kMantissaBits + 1))) {
      mantissa >>= 1;
      ++exp_field;
      if (exp_field >= kExpMask) {
        return make_signed(negative, std::uint64_t{kExpMask} << kMantissaBits);
      }
    }
  }
  return make_signed(negative,
                     (std::uint64_t{exp_field} << kMantissaBits) |
                         (mantissa & static_cast<std::uint64_t>(kMantissaMask)));
}

// Long division of a little-endian digit vector by a 64-bit divisor;
// quotient is written in place, the remainder returned.
std::uint64_t divmod_digits(std::span<std::uint32_t> digits, int top,
                            std::uint64_t divisor) {
  uint128 rem = 0;
  for (int i = top; i >= 0; --i) {
    const uint128 cur = (rem << 32) | digits[i];
    digits[i] = static_cast<std::uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  return static_cast<std::uint64_t>(rem);
}

}  // namespace

void SmallAccumulator::add(double v) {
  if (adds_until_propagate_ == 0) {
    carry_propagate();
  }
  if (add_no_carry(v)) {
    --adds_until_propagate_;
  }
}

void SmallAccumulator::add(std::span<const double> values) {
  std::size_t i = 0;
  while (i < values.size()) {
    if (adds_until_propagate_ == 0) {
      carry_propagate();
    }
    const std::size_t run =
        std::min(values.size() - i,
                 static_cast<std::size_t>(adds_until_propagate_));
    for (std::size_t j = 0; j < run; ++j) {
      add_no_carry(values[i + j]);
    }
    adds_until_propagate_ -= static_cast<int>(run);
    i += run;
  }
}

bool SmallAccumulator::add_no_carry(double v) {
  const std::int64_t ivalue = static_cast<std::int64_t>(to_bits(v));

  std::int64_t mantissa = ivalue & kMantissaMask;
  int exp = static_cast<int>(ivalue >> kMantissaBits) & kExpMask;

  if (exp != 0 && exp != kExpMask) {
    // Normalized: make the implicit leading 1 explicit.
    mantissa |= std::int64_t{1} << kMantissaBits;
  } else if (exp == 0) {
    if (mantissa == 0) {
      return false;  // +-0.0 adds nothing
    }
    exp = 1;  // denormals have true biased exponent 1 and no implicit 1
  } else {
    add_inf_nan(static_cast<std::uint64_t>(ivalue));
    return false;
  }

  // The low 5 exponent bits position the mantissa within a chunk, the
  // high 6 bits select the chunk.  The shifted mantissa splits into a
  // 32-bit part for chunk[ix] and at most 52 bits for chunk[ix + 1].
  const int low_exp = exp & kLowExpMask;
  const int high_exp = exp >> kLowExpBits;
  const std::int64_t low_mantissa = static_cast<std::int64_t>(
      (static_cast<std::uint64_t>(mantissa) << low_exp) &
      static_cast<std::uint64_t>(kLowMantissaMask));
  const std::int64_t high_mantissa = mantissa >> (kLowMantissaBits - low_exp);

  if (ivalue < 0) {
    chunks_[high_exp] -= low_mantissa;
    chunks_[high_exp + 1] -= high_mantissa;
  } else {
    chunks_[high_exp] += low_mantissa;
    chunks_[high_exp + 1] += high_mantissa;
  }
  return true;
}

void SmallAccumulator::add_inf_nan(std::uint64_t bits) {
  assert((static_cast<int>(bits >> kMantissaBits) & kExpMask) == kExpMask);
  const std::uint64_t mantissa = bits & static_cast<std::uint64_t>(kMantissaMask);
  if (mantissa == 0) {
    if (inf_bits_ == 0) {
      inf_bits_ = bits;
    } else if (inf_bits_ != bits && nan_bits_ == 0) {
      nan_bits_ = kCanonicalQnan;  // +Inf and -Inf together must give NaN
    }
  } else if (nan_bits_ == 0) {
    nan_bits_ = bits;  // first NaN wins, payload kept verbatim
  }
}

int SmallAccumulator::carry_propagate() {
  adds_until_propagate_ = kSmallCarryTerms;

  int u = kSmallChunks - 1;
  while (u >= 0 && chunks_[u] == 0) {
    --u;
  }
  if (u < 0) {
    return -1;
  }

  int top = -1;  // highest chunk known nonzero after normalization
  int i = 0;
  while (i < u && chunks_[i] == 0) {
    ++i;
  }
  while (i <= u) {
    const std::int64_t c = chunks_[i];
    if (c == 0) {
      ++i;
      continue;
    }
    const std::int64_t high = c >> kLowMantissaBits;
    if (high == 0) {
      top = i;
      ++i;
      continue;
    }
    if (i == u) {
      if (high == -1) {
        // Keep the top chunk negative rather than smearing all-ones
        // upward; it stays within [-2^32, -1].
        top = i;
        break;
      }
      u = i + 1;  // the carry extends the nonzero region
    }
    const std::int64_t low = c & kLowMantissaMask;
    if (low != 0) {
      top = i;
    }
    assert(i + 1 < kSmallChunks);
    chunks_[i] = low;
    chunks_[i + 1] += high;
    ++i;
  }

  if (top < 0) {
    return -1;  // everything cancelled to zero
  }

  // A top chunk of exactly -1 only duplicates sign bits; fold it into the
  // chunk below so the top chunk is never -1.
  while (chunks_[top] == -1 && top > 0) {
    chunks_[top] = 0;
    --top;
    chunks_[top] -= std::int64_t{1} << kLowMantissaBits;
  }
  return top;
}

void SmallAccumulator::merge(const SmallAccumulator &other) {
  SmallAccumulator src = other;
  src.carry_propagate();

  if (src.nan_bits_ != 0 && nan_bits_ == 0) {
    nan_bits_ = src.nan_bits_;
  }
  if (src.inf_bits_ != 0) {
    if (inf_bits_ == 0) {
      inf_bits_ = src.inf_bits_;
    } else if (inf_bits_ != src.inf_bits_ && nan_bits_ == 0) {
      nan_bits_ = kCanonicalQnan;
    }
  }

  // After propagation every source chunk fits in 33 bits, far below the
  // 2^52 - 1 per-chunk headroom the budget analysis assumes, so a single
  // elementwise pass cannot overflow even with the budget at zero.  The
  // final propagation restores the canonical form and resets the budget.
  for (int i = 0; i < kSmallChunks; ++i) {
    chunks_[i] += src.chunks_[i];
  }
  carry_propagate();
}

double SmallAccumulator::round() {
  if (nan_bits_ != 0) {
    return from_bits(nan_bits_);
  }
  if (inf_bits_ != 0) {
    return from_bits(inf_bits_);
  }
  const int top = carry_propagate();
  if (top < 0) {
    return 0.0;  // exact zero rounds to +0.0
  }
  const Magnitude m = extract_magnitude(chunks(), top);
  // Chunk i weighs 2^(32 i - 1075); every input is a multiple of 2^-1074,
  // so the magnitude's lowest bit is always clear and values that land in
  // the denormal range come out exact.
  assert((m.digits[0] & 1) == 0);
  return round_digits(m.digits, m.top, m.negative, -(kExpBias + kMantissaBits),
                      false);
}

double SmallAccumulator::mean(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("mean: divisor must be a positive integer");
  }
  if (nan_bits_ != 0) {
    return from_bits(nan_bits_);
  }
  if (inf_bits_ != 0) {
    return from_bits(inf_bits_);
  }
  const int top = carry_propagate();
  if (top < 0) {
    return 0.0;
  }
  Magnitude m = extract_magnitude(chunks(), top);
  constexpr int kScale = kExpBias + kMantissaBits;  // value = M * 2^-1075

  // First division decides the regime: quotients below 2^53 mean the
  // result is on the denormal grid (including the very bottom normal
  // binade), otherwise a normal with at least 53 quotient bits available.
  auto quotient = m.digits;
  std::uint64_t rem = divmod_digits(quotient, m.top, n);
  int qtop = m.top;
  while (qtop >= 0 && quotient[qtop] == 0) {
    --qtop;
  }

  if (qtop < 0 || bit_length(std::span<const std::uint32_t>(quotient), qtop) <=
                      kMantissaBits + 1) {
    // value/n < 2^-1022: round M / (2n) to an integer count of 2^-1074
    // units, ties to even.  M is even, so M/2 is exact and the divisor
    // stays within 64 bits.
    auto half = m.digits;
    for (int i = 0; i <= m.top; ++i) {
      half[i] = (half[i] >> 1) |
                (i + 1 <= m.top ? (half[i + 1] & 1) << 31 : 0);
    }
    std::uint64_t r = divmod_digits(half, m.top, n);
    std::uint64_t units = half[0] | (m.top >= 1 ? std::uint64_t{half[1]} << 32 : 0);
#ifndef NDEBUG
    for (int i = 2; i <= m.top; ++i) {
      assert(half[i] == 0);
    }
#endif
    // Compare the fractional part r/n against 1/2 without overflowing:
    // 2r > n  <=>  r > n - r.
    if (r > n - r || (r == n - r && (units & 1))) {
      ++units;
    }
    return make_signed(m.negative, units);
  }

  // Four extra bits guarantee the quotient carries a full mantissa plus
  // round and sticky bits; the division remainder feeds the sticky.
  constexpr int kExtraBits = 4;
  std::array<std::uint32_t, kSmallChunks + 2> shifted{};
  std::uint32_t carry = 0;
  for (int i = 0; i <= m.top; ++i) {
    shifted[i] = (m.digits[i] << kExtraBits) | carry;
    carry = m.digits[i] >> (32 - kExtraBits);
  }
  int stop = m.top;
  if (carry != 0) {
    shifted[++stop] = carry;
  }
  rem = divmod_digits(shifted, stop, n);
  while (stop >= 0 && shifted[stop] == 0) {
    --stop;
  }
  return round_digits(shifted, stop, m.negative, -(kScale + kExtraBits),
                      rem != 0);
}

}  // namespace exsum
