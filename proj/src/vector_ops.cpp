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

#include "exsum/vector_ops.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "exsum/baselines.hpp"
#include "exsum/large_accumulator.hpp"
#include "exsum/small_accumulator.hpp"

namespace exsum {

namespace {

struct Segment {
  std::size_t begin;
  std::size_t end;
};

// Deterministic contiguous split: the remainder is spread over the first
// segments, so the geometry depends only on (size, parts).
std::vector<Segment> split(std::size_t size, int parts) {
  const std::size_t p = static_cast<std::size_t>(std::max(parts, 1));
  std::vector<Segment> segments(p);
  const std::size_t base = size / p;
  const std::size_t extra = size % p;
  std::size_t at = 0;
  for (std::size_t i = 0; i < p; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    segments[i] = {at, at + len};
    at += len;
  }
  return segments;
}

SmallAccumulator sum_segment(std::span<const double> values,
                             std::size_t large_threshold) {
  if (values.size() > large_threshold) {
    LargeAccumulator acc;
    acc.add(values);
    acc.drain();
    return acc.small();
  }
  SmallAccumulator acc;
  acc.add(values);
  return acc;
}

double merge_partials(std::vector<SmallAccumulator> &partials) {
  SmallAccumulator total;
  for (const SmallAccumulator &part : partials) {
    total.merge(part);
  }
  return total.round();
}

template <typename F>
double sum_products(std::size_t n, SumMethod method, F product) {
  switch (method) {
    case SumMethod::small: {
      SmallAccumulator acc;
      for (std::size_t i = 0; i < n; ++i) {
        acc.add(product(i));
      }
      return acc.round();
    }
    case SumMethod::large: {
      LargeAccumulator acc;
      for (std::size_t i = 0; i < n; ++i) {
        acc.add(product(i));
      }
      return acc.round();
    }
    default: {
      std::vector<double> products(n);
      for (std::size_t i = 0; i < n; ++i) {
        products[i] = product(i);
      }
      return sum(products, method);
    }
  }
}

}  // namespace

SumMethod parse_method(std::string_view name) {
  if (name == "small") return SumMethod::small;
  if (name == "large") return SumMethod::large;
  if (name == "ordered") return SumMethod::ordered;
  if (name == "unordered") return SumMethod::unordered;
  if (name == "kahan") return SumMethod::kahan;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::string_view method_name(SumMethod m) {
  switch (m) {
    case SumMethod::small: return "small";
    case SumMethod::large: return "large";
    case SumMethod::ordered: return "ordered";
    case SumMethod::unordered: return "unordered";
    case SumMethod::kahan: return "kahan";
  }
  return "?";
}

double exact_sum(std::span<const double> values, ExactMethod method) {
  if (method == ExactMethod::small) {
    SmallAccumulator acc;
    acc.add(values);
    return acc.round();
  }
  LargeAccumulator acc;
  acc.add(values);
  return acc.round();
}

double sum(std::span<const double> values, SumMethod method) {
  switch (method) {
    case SumMethod::small: return exact_sum(values, ExactMethod::small);
    case SumMethod::large: return exact_sum(values, ExactMethod::large);
    case SumMethod::ordered: return sum_ordered(values);
    case SumMethod::unordered: return sum_unordered(values);
    case SumMethod::kahan: return sum_kahan(values);
  }
  throw std::invalid_argument("unknown method");
}

double sqnorm(std::span<const double> values, SumMethod method) {
  return sum_products(values.size(), method,
                      [&](std::size_t i) { return values[i] * values[i]; });
}

double dot(std::span<const double> a, std::span<const double> b,
           SumMethod method) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  return sum_products(a.size(), method,
                      [&](std::size_t i) { return a[i] * b[i]; });
}

double exact_mean(std::span<const double> values, ExactMethod method) {
  if (values.empty()) {
    throw std::invalid_argument("exact_mean: empty input");
  }
  const std::uint64_t n = values.size();
  if (method == ExactMethod::small) {
    SmallAccumulator acc;
    acc.add(values);
    return acc.mean(n);
  }
  LargeAccumulator acc;
  acc.add(values);
  return acc.mean(n);
}

double parallel_exact_sum(std::span<const double> values,
                          const ParallelPlan &plan) {
  const auto segments = split(values.size(), plan.parts);
  const int parts = static_cast<int>(segments.size());
  std::vector<SmallAccumulator> partials(segments.size());
#pragma omp parallel for schedule(static) if (parts > 1)
  for (int i = 0; i < parts; ++i) {
    const Segment seg = segments[static_cast<std::size_t>(i)];
    partials[static_cast<std::size_t>(i)] = sum_segment(
        values.subspan(seg.begin, seg.end - seg.begin), plan.large_threshold);
  }
  // Ascending merge order: the exact value cannot depend on it, but it
  // pins down which special-value payload survives.
  return merge_partials(partials);
}

double parallel_exact_sum_serial(std::span<const double> values,
                                 const ParallelPlan &plan) {
  const auto segments = split(values.size(), plan.parts);
  std::vector<SmallAccumulator> partials(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    partials[i] = sum_segment(
        values.subspan(segments[i].begin, segments[i].end - segments[i].begin),
        plan.large_threshold);
  }
  return merge_partials(partials);
}

}  // namespace exsum
