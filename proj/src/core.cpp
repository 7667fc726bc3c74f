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

#include "dynbench/core.hpp"

#include <algorithm>
#include <iterator>

namespace dynbench {

Label::Label(std::string v) : value(std::move(v)) {
  if (value.empty()) throw Error("label must not be empty");
}

Edge makeEdge(NodeId a, NodeId b) {
  if (a == b) throw Error("self-loop on node " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

NodeSet makeNodeSet(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

NodeSet setUnion(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet setDifference(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool intersects(const NodeSet& a, const NodeSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

Snapshot Snapshot::make(Step step, NodeSet nodes, std::vector<Edge> edges) {
  Snapshot s;
  s.step = step;
  s.nodes = makeNodeSet(std::move(nodes));
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= e.v) throw Error("edge endpoints must satisfy u < v");
    if (i > 0 && edges[i - 1] == e) {
      throw Error("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    if (!std::binary_search(s.nodes.begin(), s.nodes.end(), e.u) ||
        !std::binary_search(s.nodes.begin(), s.nodes.end(), e.v)) {
      throw Error("edge endpoint not among snapshot nodes at step " + std::to_string(step));
    }
  }
  s.edges = std::move(edges);
  return s;
}

bool Snapshot::hasEdge(const Edge& e) const {
  return std::binary_search(edges.begin(), edges.end(), e);
}

void DynamicGraph::append(Snapshot snapshot) {
  if (snapshot.step != snapshots_.size()) {
    throw Error("snapshot step " + std::to_string(snapshot.step) + " out of sequence, expected " +
                std::to_string(snapshots_.size()));
  }
  snapshots_.push_back(std::move(snapshot));
}

std::size_t DynamicGraph::maxNodesPerStep() const {
  std::size_t best = 0;
  for (const auto& s : snapshots_) best = std::max(best, s.nodes.size());
  return best;
}

NodeSet DynamicGraph::allNodes() const {
  std::vector<NodeId> all;
  for (const auto& s : snapshots_) all.insert(all.end(), s.nodes.begin(), s.nodes.end());
  return makeNodeSet(std::move(all));
}

void LongitudinalPartition::set(NodeId node, Step t, std::optional<Label> label) {
  if (t >= steps_.size()) steps_.resize(static_cast<std::size_t>(t) + 1);
  steps_[t][node] = std::move(label);
}

const std::optional<Label>* LongitudinalPartition::find(NodeId node, Step t) const {
  if (t >= steps_.size()) return nullptr;
  auto it = steps_[t].find(node);
  return it == steps_[t].end() ? nullptr : &it->second;
}

void LongitudinalPartition::resize(std::size_t numSteps) { steps_.resize(numSteps); }

std::size_t LongitudinalPartition::definedCount() const {
  std::size_t n = 0;
  for (const auto& step : steps_) {
    for (const auto& [node, label] : step) n += label.has_value() ? 1 : 0;
  }
  return n;
}

NodeSet LongitudinalPartition::nodes() const {
  std::vector<NodeId> all;
  for (const auto& step : steps_) {
    for (const auto& entry : step) all.push_back(entry.first);
  }
  return makeNodeSet(std::move(all));
}

LongitudinalPartition LongitudinalPartition::definedOnly() const {
  LongitudinalPartition out(steps_.size());
  for (std::size_t t = 0; t < steps_.size(); ++t) {
    for (const auto& [node, label] : steps_[t]) {
      if (label) out.steps_[t].emplace(node, label);
    }
  }
  return out;
}

std::pair<LongitudinalPartition, LongitudinalPartition> restrict(const LongitudinalPartition& p,
                                                                 const LongitudinalPartition& q) {
  const std::size_t steps = std::max(p.numSteps(), q.numSteps());
  LongitudinalPartition rp(steps);
  LongitudinalPartition rq(steps);
  std::size_t kept = 0;
  for (std::size_t t = 0; t < std::min(p.numSteps(), q.numSteps()); ++t) {
    const Step step = static_cast<Step>(t);
    for (const auto& [node, label] : p.at(step)) {
      if (!label) continue;
      const auto* other = q.find(node, step);
      if (other == nullptr || !other->has_value()) continue;
      rp.set(node, step, label);
      rq.set(node, step, *other);
      ++kept;
    }
  }
  if (kept == 0) throw Error("nothing to compare: partitions share no defined (node, step) entry");
  return {std::move(rp), std::move(rq)};
}

}  // namespace dynbench
