// Copyright 2026 The Dynbench Authors.
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

// Detector running-time sweeps. Only detector compute is timed.

#ifndef DYNBENCH_BENCH_HPP_
#define DYNBENCH_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dynbench/core.hpp"

namespace dynbench {

struct BenchParams {
  // Step sweep: prefixes of one benchmark of about 50 nodes.
  std::vector<Step> stepPrefixes;
  // Size sweep: 50-step slices of benchmarks with m initial communities.
  std::vector<std::size_t> mValues;
  Step sliceSteps = 50;
  std::vector<std::string> methods;
  double mu = 0.2;
  double betaR = 0.01;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  // Each timing is the minimum over this many runs.
  unsigned repeats = 1;
};

struct BenchRow {
  std::string sweep;  // "steps" or "m"
  std::string method;
  std::size_t value = 0;  // prefix length or m
  std::size_t steps = 0;
  double meanNodes = 0.0;  // nodes per step
  double seconds = 0.0;
};

std::vector<BenchRow> runBench(const BenchParams& params);

// Tab-separated, one header line then one line per row.
std::string formatBenchTable(const std::vector<BenchRow>& rows);

}  // namespace dynbench

#endif  // DYNBENCH_BENCH_HPP_
