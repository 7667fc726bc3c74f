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

// Random merge/split scenarios.

#ifndef DYNBENCH_RANDOM_SCENARIO_HPP_
#define DYNBENCH_RANDOM_SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dynbench/scenario.hpp"

namespace dynbench {

struct RandomScenarioParams {
  std::size_t m = 10;     // initial communities
  std::size_t sMin = 5;   // initial size bounds
  std::size_t sMax = 15;
  std::size_t o = 20;     // operations
  std::uint64_t seed = 0;

  void validate() const;
};

struct RandomScenario {
  std::vector<EventDecl> events;
  // One line per operation that could not be performed.
  std::vector<std::string> skipped;
};

// INITIALIZE with m sizes drawn in [sMin, sMax], then o operations, each
// started as soon as the previous one completes. An operation picks an active
// community c uniformly: if |c| > sMax it is split in two, the larger part
// (round(2|c|/3) nodes) keeping the label; otherwise c is merged with the
// smallest other community (lowest id on ties) under the label of the larger
// of the two.
RandomScenario randomScenario(const RandomScenarioParams& params);

}  // namespace dynbench

#endif  // DYNBENCH_RANDOM_SCENARIO_HPP_
