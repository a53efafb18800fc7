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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace exsum {

struct BenchRecord {
  std::string method;
  std::uint64_t n = 0;
  std::uint64_t repetitions = 0;
  double ns_per_term = 0.0;
  std::uint64_t result_bits = 0;
};

struct BenchConfig {
  std::vector<std::uint64_t> sizes;
  std::vector<std::string> methods;   // method names, plus "parallel" /
                                      // "parallel-serial" when parts > 0
  std::uint64_t total_terms = 100'000'000;  // terms summed per (method, N)
  std::uint64_t seed = 1;
  int parts = 0;  // > 0 adds split-merge rows with this many parts
};

// For each (method, N): the data array is generated once, outside timing;
// the summation is repeated R = max(1, total/N) times under a monotonic
// clock; ns_per_term is total time over R*N.  Unknown method names throw
// std::invalid_argument.
std::vector<BenchRecord> run_bench(const BenchConfig &config);

// CSV with header `method,n,repetitions,ns_per_term,result_bits`.
void write_bench_csv(const std::filesystem::path &path,
                     const std::vector<BenchRecord> &records);

// Gnuplot-ready long format: one `n ns_per_term` block per method,
// blocks separated by blank lines and labelled with a comment.
void write_bench_plot(const std::filesystem::path &path,
                      const std::vector<BenchRecord> &records);

}  // namespace exsum
