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

#ifndef DYNBENCH_CORE_HPP_
#define DYNBENCH_CORE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dynbench {

using NodeId = std::uint32_t;
using Step = std::uint32_t;

// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommunityId {
  std::uint64_t value = 0;
  friend auto operator<=>(const CommunityId&, const CommunityId&) = default;
};

// Identity of a dynamic community. Never empty.
struct Label {
  std::string value;

  Label() = default;
  explicit Label(std::string v);
  friend auto operator<=>(const Label&, const Label&) = default;
};

struct Community {
  CommunityId id;
  Label label;
  NodeSet nodes;
};

// Undirected edge, always stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Orders the endpoints; throws on a self-loop.
Edge makeEdge(NodeId a, NodeId b);

NodeSet makeNodeSet(std::vector<NodeId> nodes);
NodeSet setUnion(const NodeSet& a, const NodeSet& b);
NodeSet setDifference(const NodeSet& a, const NodeSet& b);
bool intersects(const NodeSet& a, const NodeSet& b);

struct Snapshot {
  Step step = 0;
  NodeSet nodes;
  std::vector<Edge> edges;  // sorted, unique

  // Sorts and checks the invariants: no self-loops, endpoints present,
  // edges unique.
  static Snapshot make(Step step, NodeSet nodes, std::vector<Edge> edges);
  bool hasEdge(const Edge& e) const;
  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

class DynamicGraph {
 public:
  DynamicGraph() = default;

  // Appends a snapshot; its step must equal the current size.
  void append(Snapshot snapshot);

  std::size_t numSteps() const { return snapshots_.size(); }
  const Snapshot& at(Step t) const { return snapshots_.at(t); }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  std::size_t maxNodesPerStep() const;
  NodeSet allNodes() const;

  friend bool operator==(const DynamicGraph&, const DynamicGraph&) = default;

 private:
  std::vector<Snapshot> snapshots_;
};

// Label per (node, step); an entry with std::nullopt marks a node present but
// with ambiguous affiliation, a missing entry marks absence.
class LongitudinalPartition {
 public:
  using StepMap = std::map<NodeId, std::optional<Label>>;

  LongitudinalPartition() = default;
  explicit LongitudinalPartition(std::size_t numSteps) : steps_(numSteps) {}

  void set(NodeId node, Step t, std::optional<Label> label);
  // nullptr when the node is absent at t.
  const std::optional<Label>* find(NodeId node, Step t) const;
  const StepMap& at(Step t) const { return steps_.at(t); }

  std::size_t numSteps() const { return steps_.size(); }
  void resize(std::size_t numSteps);
  std::size_t definedCount() const;
  NodeSet nodes() const;
  // Copy keeping only the defined entries.
  LongitudinalPartition definedOnly() const;

  friend bool operator==(const LongitudinalPartition&, const LongitudinalPartition&) = default;

 private:
  std::vector<StepMap> steps_;
};

// Both partitions restricted to the (node, step) keys defined in both.
// Throws when that set is empty.
std::pair<LongitudinalPartition, LongitudinalPartition> restrict(const LongitudinalPartition& p,
                                                                 const LongitudinalPartition& q);

}  // namespace dynbench

#endif  // DYNBENCH_CORE_HPP_
