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

// Weighted graphs, static partitions, modularity and the Louvain heuristic.

#ifndef DYNBENCH_LOUVAIN_HPP_
#define DYNBENCH_LOUVAIN_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "dynbench/core.hpp"

namespace dynbench {

struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

// Undirected weighted graph without self-loops. Parallel edges are merged by
// summing their weights; zero-weight edges are dropped.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(NodeSet nodes, std::vector<WeightedEdge> edges);
  static WeightedGraph fromSnapshot(const Snapshot& snapshot);

  const NodeSet& nodes() const { return nodes_; }
  // Sorted by (u, v) with u < v.
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  double totalWeight() const;

 private:
  NodeSet nodes_;
  std::vector<WeightedEdge> edges_;
};

// Community index per node of one snapshot. Indices are dense and numbered by
// first appearance in node order.
class StaticPartition {
 public:
  StaticPartition() = default;
  // `community[i]` is the group of `nodes[i]`; any integer tags are accepted
  // and renumbered.
  StaticPartition(NodeSet nodes, const std::vector<std::size_t>& community);
  static StaticPartition singletons(const NodeSet& nodes);

  const NodeSet& nodes() const { return nodes_; }
  const std::vector<std::size_t>& assignment() const { return community_; }
  std::size_t numCommunities() const { return count_; }
  // nullopt when the node is not covered.
  std::optional<std::size_t> of(NodeId node) const;
  // Member sets indexed by community.
  std::vector<NodeSet> communities() const;

  friend bool operator==(const StaticPartition&, const StaticPartition&) = default;

 private:
  NodeSet nodes_;
  std::vector<std::size_t> community_;
  std::size_t count_ = 0;
};

// Newman modularity; 0 for a graph without edges. The partition must cover
// every node of the graph.
double modularity(const WeightedGraph& graph, const StaticPartition& partition);
double modularity(const Snapshot& snapshot, const StaticPartition& partition);

// Local moves plus aggregation until no move improves modularity. With a
// seed partition the first level starts from it instead of singletons; nodes
// it does not cover start alone. Throws on a graph without nodes.
StaticPartition louvain(const WeightedGraph& graph, std::uint64_t seed,
                        const std::optional<StaticPartition>& seedPartition = std::nullopt);
StaticPartition louvain(const Snapshot& snapshot, std::uint64_t seed,
                        const std::optional<StaticPartition>& seedPartition = std::nullopt);

}  // namespace dynbench

#endif  // DYNBENCH_LOUVAIN_HPP_
