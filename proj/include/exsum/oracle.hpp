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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>

namespace exsum::oracle {

// Arbitrary-precision ground truth for the bit-exact tests and the CLI
// compare command.  Every finite double is an integer multiple of 2^-1074
// (the smallest denormal), so sums are plain integer arithmetic with zero
// error.  This module is a verification surface, deliberately independent
// of the accumulator implementations: it lives in its own library target
// and shares no rounding code with them.
struct ExactValue {
  boost::multiprecision::cpp_int numerator;  // value = numerator * 2^-1074
  int inf_sign = 0;   // -1, 0, +1
  bool nan = false;
};

// IEEE special-value semantics: any NaN poisons the result; infinities of
// both signs do too; same-signed infinities stay infinite.
void add(ExactValue &ev, double v);

ExactValue sum(std::span<const double> values);

// Nearest double, ties to even; overflow gives +-Inf; exact zero gives
// +0.0 (matching the accumulators' signed-zero rule).
double round(const ExactValue &ev);

// Correctly rounded ev / n.  Throws std::invalid_argument when n is zero.
double mean(const ExactValue &ev, std::uint64_t n);

}  // namespace exsum::oracle
