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

// Dynamic community detectors built on per-snapshot Louvain.
//
// Each step t runs Louvain with a seed derived from (seed, t), so results do
// not depend on the number of worker threads. Every detector labels every
// node present at every step.

#ifndef DYNBENCH_DETECTORS_HPP_
#define DYNBENCH_DETECTORS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dynbench/core.hpp"
#include "dynbench/louvain.hpp"

namespace dynbench {

struct MatchingParams {
  double jaccardThreshold = 0.3;
};

struct SmoothedGraphParams {
  double alphaSG = 0.9;
};

struct LabelSmoothingParams {
  double jaccardThreshold = 0.3;
  // Largest step distance between linked communities; unlimited when absent.
  std::optional<Step> window;
};

// |a & b| / |a | b|. Throws when both sets are empty.
double jaccard(const NodeSet& a, const NodeSet& b);

// Persistent labels for a sequence of static partitions. Communities of
// consecutive steps share a label when each is the other's most similar
// community (Jaccard, lowest index on ties) and their Jaccard reaches the
// threshold. Other communities receive fresh labels "D<k>".
LongitudinalPartition matchLabels(const std::vector<StaticPartition>& partitions, const MatchingParams& params = {});

// Louvain seed used for step t.
std::uint64_t stepSeed(std::uint64_t seed, Step t);

// Per-step Louvain partitions, computed on up to `jobs` threads. Steps without
// nodes yield an empty partition.
std::vector<StaticPartition> staticPartitions(const DynamicGraph& g, std::uint64_t seed, unsigned jobs = 1);

LongitudinalPartition noSmoothing(const DynamicGraph& g, std::uint64_t seed, unsigned jobs = 1,
                                  const MatchingParams& matching = {});
// Step t starts Louvain from the step t-1 partition; new nodes start alone.
LongitudinalPartition implicitGlobal(const DynamicGraph& g, std::uint64_t seed, const MatchingParams& matching = {});
// Step t runs Louvain on alphaSG * A_t + (1 - alphaSG) * C_{t-1}, where C links
// co-members of the step t-1 partition.
LongitudinalPartition smoothedGraph(const DynamicGraph& g, std::uint64_t seed, const SmoothedGraphParams& params = {},
                                    const MatchingParams& matching = {});
// Communities of static communities: Louvain on the graph linking
// communities of different steps by their Jaccard coefficient. Labels "S<k>".
LongitudinalPartition labelSmoothing(const DynamicGraph& g, std::uint64_t seed, const LabelSmoothingParams& params = {},
                                     unsigned jobs = 1);

// The weighted graph whose nodes are (step, community) pairs, numbered in
// step order, used by labelSmoothing.
WeightedGraph survivalGraph(const std::vector<StaticPartition>& partitions, const LabelSmoothingParams& params);

struct DetectorOptions {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double alphaSG = 0.9;
  double jaccardThreshold = 0.3;
  std::optional<Step> window;
};

using Detector = std::function<LongitudinalPartition(const DynamicGraph&, const DetectorOptions&)>;

// "no-smoothing", "implicit-global", "smoothed-graph", "label-smoothing".
const std::vector<std::string>& detectorNames();
// Throws Error listing the known names when `name` is unknown.
const Detector& findDetector(const std::string& name);

}  // namespace dynbench

#endif  // DYNBENCH_DETECTORS_HPP_
