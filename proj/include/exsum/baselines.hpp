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

#include <span>

namespace exsum {

// Inexact comparison summers.  All three are bit-deterministic for a
// fixed input order; none is exact.  They require IEEE semantics from the
// build (no -ffast-math / reassociation).

// Left-to-right fold into one double accumulator.
double sum_ordered(std::span<const double> values);

// Separate accumulators for even- and odd-indexed terms, added together
// at the end.  A trailing element of odd-length input has an even index
// and goes to the even accumulator.
double sum_unordered(std::span<const double> values);

// Compensated summation: the rounding error of each addition is
// subtracted from the next term before it is added.
double sum_kahan(std::span<const double> values);

}  // namespace exsum
