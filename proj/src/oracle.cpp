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

#include "exsum/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "exsum/fpbits.hpp"

namespace exsum::oracle {

namespace {

using boost::multiprecision::cpp_int;

// Correctly rounded magnitude * 2^-1074 for a nonnegative integer
// magnitude, as a positive double.  extra_sticky marks a discarded
// positive fraction below the integer (from a division remainder).
//
// The scaling goes through ldexp, which is exact whenever the result is
// representable and returns +/-Inf on overflow; this keeps the oracle's
// rounding route disjoint from the accumulators' bit assembly.
double round_magnitude(const cpp_int &magnitude, int scale_pow2,
                       bool extra_sticky) {
  const std::size_t bits = msb(magnitude) + 1;
  if (bits <= kMantissaBits + 1) {
    // At most 53 significant bits: exact unless the sticky fraction
    // matters, and it only matters for the round-to-nearest of a value
    // with fewer bits than that, which an exact grid cannot produce here;
    // extra_sticky never reaches this branch with fewer than 54 bits.
    return std::ldexp(static_cast<double>(magnitude.convert_to<std::uint64_t>()),
                      scale_pow2);
  }
  const std::size_t shift = bits - (kMantissaBits + 1);
  std::uint64_t keep = (magnitude >> shift).convert_to<std::uint64_t>();
  const bool round_bit = bit_test(magnitude, static_cast<unsigned>(shift - 1));
  const bool sticky =
      extra_sticky ||
      (magnitude & ((cpp_int(1) << (shift - 1)) - 1)) != 0;
  if (round_bit && (sticky || (keep & 1))) {
    ++keep;  // 2^53 stays exactly convertible
  }
  return std::ldexp(static_cast<double>(keep),
                    scale_pow2 + static_cast<int>(shift));
}

double apply_sign(bool negative, double magnitude) {
  return negative ? -magnitude : magnitude;
}

}  // namespace

void add(ExactValue &ev, double v) {
  const FpParts p = decompose(v);
  switch (p.cls) {
    case FpClass::nan:
      ev.nan = true;
      return;
    case FpClass::infinity: {
      const int s = p.sign ? -1 : 1;
      if (ev.inf_sign == 0) {
        ev.inf_sign = s;
      } else if (ev.inf_sign != s) {
        ev.nan = true;  // opposite infinities
      }
      return;
    }
    case FpClass::zero:
      return;
    case FpClass::denormal: {
      cpp_int units(p.mantissa_field);
      ev.numerator += p.sign ? -units : units;
      return;
    }
    case FpClass::normal: {
      // (2^52 + m) * 2^(e - 1075) = (2^52 + m) * 2^(e-1) units of 2^-1074
      cpp_int units((std::uint64_t{1} << kMantissaBits) | p.mantissa_field);
      units <<= p.exponent_field - 1;
      ev.numerator += p.sign ? -units : units;
      return;
    }
  }
}

ExactValue sum(std::span<const double> values) {
  ExactValue ev;
  for (const double v : values) {
    add(ev, v);
  }
  return ev;
}

double round(const ExactValue &ev) {
  if (ev.nan) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (ev.inf_sign != 0) {
    return ev.inf_sign > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
  }
  if (ev.numerator == 0) {
    return 0.0;
  }
  const bool negative = ev.numerator < 0;
  const cpp_int magnitude = abs(ev.numerator);
  return apply_sign(negative,
                    round_magnitude(magnitude, -(kExpBias + kMantissaBits - 1),
                                    false));
}

double mean(const ExactValue &ev, std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("oracle::mean: divisor must be positive");
  }
  if (ev.nan) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (ev.inf_sign != 0) {
    return ev.inf_sign > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
  }
  if (ev.numerator == 0) {
    return 0.0;
  }
  const bool negative = ev.numerator < 0;
  const cpp_int a = abs(ev.numerator);
  const cpp_int d(n);

  if (a < d << (kMantissaBits + 1)) {
    // value/n < 2^-1021, where the spacing of doubles is one 2^-1074
    // unit: round a/d to an integer count of units, ties to even.
    cpp_int q = a / d;
    const cpp_int r = a % d;
    const cpp_int twice_r = r << 1;
    if (twice_r > d || (twice_r == d && bit_test(q, 0))) {
      ++q;
    }
    return apply_sign(
        negative, std::ldexp(static_cast<double>(q.convert_to<std::uint64_t>()),
                             -(kExpBias + kMantissaBits - 1)));
  }

  // Quotient has at least 54 bits; four extra bits leave room for the
  // round and sticky positions, with the remainder feeding the sticky.
  constexpr int kExtraBits = 4;
  const cpp_int q = (a << kExtraBits) / d;
  const cpp_int r = (a << kExtraBits) % d;
  return apply_sign(negative,
                    round_magnitude(q,
                                    -(kExpBias + kMantissaBits - 1) - kExtraBits,
                                    r != 0));
}

}  // namespace exsum::oracle
