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

#include "exsum/generator.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace exsum {

std::vector<double> generate(const GeneratorSpec &spec) {
  if (spec.n == 0 || spec.n % 2 != 0) {
    throw std::invalid_argument(
        "generate: n must be a positive even integer");
  }
  Mcg rng(spec.seed);
  std::vector<double> values(spec.n);
  const std::uint64_t half = spec.n / 2;
  for (std::uint64_t i = 0; i < half; ++i) {
    const double u1 = rng.next_unit();
    const double u2 = rng.next_unit();
    values[i] = u1 * std::exp(30.0 * u2);
    values[spec.n - 1 - i] = -values[i];
  }
  if (spec.permute) {
    // Fisher-Yates on the same stream; the multiset is unchanged.
    for (std::uint64_t i = spec.n - 1; i > 0; --i) {
      const std::uint64_t j = rng.next() % (i + 1);
      std::swap(values[i], values[j]);
    }
  }
  return values;
}

}  // namespace exsum
