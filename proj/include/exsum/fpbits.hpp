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

#include <bit>
#include <cstdint>

namespace exsum {

/* Constants defining the IEEE-754 64-bit floating-point format. */

inline constexpr int kMantissaBits = 52;
inline constexpr int kExpBits = 11;
inline constexpr std::int64_t kMantissaMask =
    (std::int64_t{1} << kMantissaBits) - 1;
inline constexpr int kExpMask = (1 << kExpBits) - 1;
inline constexpr int kExpBias = (1 << (kExpBits - 1)) - 1;
inline constexpr int kSignBit = kMantissaBits + kExpBits;
inline constexpr std::uint64_t kSignMask = std::uint64_t{1} << kSignBit;

enum class FpClass { zero, denormal, normal, infinity, nan };

/* Decomposed fields of a 64-bit float.  Reassembling
   sign << 63 | exponent_field << 52 | mantissa_field reproduces the
   original bit pattern exactly, including NaN payloads. */
struct FpParts {
  int sign;                       // 0 or 1
  int exponent_field;             // [0, 2047]
  std::uint64_t mantissa_field;   // [0, 2^52 - 1]
  FpClass cls;
};

/* Value-level bit reinterpretation; byte-order independent. */
inline std::uint64_t to_bits(double v) {
  return std::bit_cast<std::uint64_t>(v);
}

inline double from_bits(std::uint64_t bits) {
  return std::bit_cast<double>(bits);
}

inline FpParts decompose(double v) {
  const std::uint64_t bits = to_bits(v);
  FpParts p;
  p.sign = static_cast<int>(bits >> kSignBit);
  p.exponent_field = static_cast<int>(bits >> kMantissaBits) & kExpMask;
  p.mantissa_field = bits & static_cast<std::uint64_t>(kMantissaMask);
  if (p.exponent_field == kExpMask) {
    p.cls = p.mantissa_field == 0 ? FpClass::infinity : FpClass::nan;
  } else if (p.exponent_field == 0) {
    p.cls = p.mantissa_field == 0 ? FpClass::zero : FpClass::denormal;
  } else {
    p.cls = FpClass::normal;
  }
  return p;
}

inline std::uint64_t assemble(const FpParts &p) {
  return (static_cast<std::uint64_t>(p.sign) << kSignBit) |
         (static_cast<std::uint64_t>(p.exponent_field) << kMantissaBits) |
         p.mantissa_field;
}

}  // namespace exsum
