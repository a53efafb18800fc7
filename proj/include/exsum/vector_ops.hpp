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

#include <cstddef>
#include <span>
#include <string_view>

namespace exsum {

enum class SumMethod { small, large, ordered, unordered, kahan };
enum class ExactMethod { small, large };

// Crossover above which the large accumulator is the faster exact method.
inline constexpr std::size_t kLargeMethodThreshold = 1000;

// Parses one of "small", "large", "ordered", "unordered", "kahan".
// Throws std::invalid_argument for anything else.
SumMethod parse_method(std::string_view name);
std::string_view method_name(SumMethod m);

// Correctly rounded exact sum.  Both exact methods return identical bits.
double exact_sum(std::span<const double> values, ExactMethod method);

// Sum by any method, exact or baseline.
double sum(std::span<const double> values, SumMethod method);

// Sum of squares of elements.  Each square is one IEEE nearest-even
// multiply; the rounded squares are then summed by the chosen method, so
// for the exact methods the result is the correctly rounded sum of the
// rounded squares.
double sqnorm(std::span<const double> values, SumMethod method);

// Sum of elementwise rounded products.  Throws std::invalid_argument on
// length mismatch.
double dot(std::span<const double> a, std::span<const double> b,
           SumMethod method);

// Correctly rounded (exact sum) / N.  Throws std::invalid_argument on
// empty input.
double exact_mean(std::span<const double> values, ExactMethod method);

struct ParallelPlan {
  int parts = 1;
  std::size_t large_threshold = kLargeMethodThreshold;
};

// Split-merge exact sum: the array is split into `parts` contiguous
// segments, each segment is summed into its own accumulator (large for
// segments longer than the threshold, small otherwise), and the partial
// accumulators are merged in ascending segment order.  The result bits
// are identical for every value of `parts` and equal to exact_sum's.
//
// Segments run under OpenMP when it is available; each worker owns its
// accumulator exclusively and the merge runs after all workers finish,
// so the result is independent of scheduling.
double parallel_exact_sum(std::span<const double> values,
                          const ParallelPlan &plan = {});

// Serial reference executing the identical plan sequentially; kept for
// testing and benchmark comparison against the OpenMP kernels.
double parallel_exact_sum_serial(std::span<const double> values,
                                 const ParallelPlan &plan = {});

}  // namespace exsum
