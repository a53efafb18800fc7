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

#include "exsum/baselines.hpp"

#include <cstddef>

namespace exsum {

double sum_ordered(std::span<const double> values) {
  double total = 0.0;
  for (const double v : values) {
    total += v;
  }
  return total;
}

double sum_unordered(std::span<const double> values) {
  double even = 0.0;
  double odd = 0.0;
  std::size_t i = 0;
  for (; i + 1 < values.size(); i += 2) {
    even += values[i];
    odd += values[i + 1];
  }
  if (i < values.size()) {
    even += values[i];
  }
  return even + odd;
}

double sum_kahan(std::span<const double> values) {
  double total = 0.0;
  double compensation = 0.0;
  for (const double v : values) {
    const double adjusted = v - compensation;
    const double next = total + adjusted;
    compensation = (next - total) - adjusted;
    total = next;
  }
  return total;
}

}  // namespace exsum
