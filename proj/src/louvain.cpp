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

#include "dynbench/louvain.hpp"

#include <algorithm>
#include <limits>

#include "dynbench/random.hpp"

namespace dynbench {

namespace {

std::size_t indexOf(const NodeSet& nodes, NodeId node) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
  if (it == nodes.end() || *it != node) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(it - nodes.begin());
}

// Sorts (u, v) pairs and sums duplicates.
template <typename E>
void mergeParallel(std::vector<E>& edges) {
  std::sort(edges.begin(), edges.end(), [](const E& a, const E& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (out > 0 && edges[out - 1].u == edges[i].u && edges[out - 1].v == edges[i].v) {
      edges[out - 1].weight += edges[i].weight;
    } else {
      edges[out++] = edges[i];
    }
  }
  edges.resize(out);
}

}  // namespace

WeightedGraph::WeightedGraph(NodeSet nodes, std::vector<WeightedEdge> edges) : nodes_(makeNodeSet(std::move(nodes))) {
  for (auto& e : edges) {
    if (e.u == e.v) throw Error("weighted graph edges must join distinct nodes");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!(e.weight >= 0.0)) throw Error("edge weights must be non-negative");
    if (indexOf(nodes_, e.u) == std::numeric_limits<std::size_t>::max() ||
        indexOf(nodes_, e.v) == std::numeric_limits<std::size_t>::max()) {
      throw Error("edge endpoint is not a node of the graph");
    }
  }
  mergeParallel(edges);
  std::erase_if(edges, [](const WeightedEdge& e) { return e.weight == 0.0; });
  edges_ = std::move(edges);
}

WeightedGraph WeightedGraph::fromSnapshot(const Snapshot& snapshot) {
  std::vector<WeightedEdge> edges;
  edges.reserve(snapshot.edges.size());
  for (const auto& e : snapshot.edges) edges.push_back({e.u, e.v, 1.0});
  return WeightedGraph(snapshot.nodes, std::move(edges));
}

double WeightedGraph::totalWeight() const {
  double w = 0.0;
  for (const auto& e : edges_) w += e.weight;
  return w;
}

StaticPartition::StaticPartition(NodeSet nodes, const std::vector<std::size_t>& community) : nodes_(std::move(nodes)) {
  if (nodes_.size() != community.size()) throw Error("partition needs one community per node");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i - 1] >= nodes_[i]) throw Error("partition nodes must be sorted and unique");
  }
  community_.resize(community.size());
  std::vector<std::size_t> tags(community);
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  std::vector<std::size_t> dense(tags.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < community.size(); ++i) {
    const auto t = static_cast<std::size_t>(std::lower_bound(tags.begin(), tags.end(), community[i]) - tags.begin());
    if (dense[t] == std::numeric_limits<std::size_t>::max()) dense[t] = count_++;
    community_[i] = dense[t];
  }
}

StaticPartition StaticPartition::singletons(const NodeSet& nodes) {
  std::vector<std::size_t> c(nodes.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = i;
  return StaticPartition(nodes, c);
}

std::optional<std::size_t> StaticPartition::of(NodeId node) const {
  const std::size_t i = indexOf(nodes_, node);
  if (i == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return community_[i];
}

std::vector<NodeSet> StaticPartition::communities() const {
  std::vector<NodeSet> out(count_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) out[community_[i]].push_back(nodes_[i]);
  return out;
}

double modularity(const WeightedGraph& graph, const StaticPartition& partition) {
  const double m = graph.totalWeight();
  if (m == 0.0) return 0.0;
  const auto& nodes = graph.nodes();
  std::vector<std::size_t> comm(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto c = partition.of(nodes[i]);
    if (!c) throw Error("partition does not cover node " + std::to_string(nodes[i]));
    comm[i] = *c;
  }
  std::vector<double> inside(partition.numCommunities(), 0.0);
  std::vector<double> total(partition.numCommunities(), 0.0);
  for (const auto& e : graph.edges()) {
    const std::size_t cu = comm[indexOf(nodes, e.u)];
    const std::size_t cv = comm[indexOf(nodes, e.v)];
    if (cu == cv) inside[cu] += e.weight;
    total[cu] += e.weight;
    total[cv] += e.weight;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < inside.size(); ++c) {
    const double share = total[c] / (2.0 * m);
    q += inside[c] / m - share * share;
  }
  return q;
}

double modularity(const Snapshot& snapshot, const StaticPartition& partition) {
  return modularity(WeightedGraph::fromSnapshot(snapshot), partition);
}

namespace {

struct IndexEdge {
  std::size_t u;
  std::size_t v;
  double weight;
};

// One level of the hierarchy: nodes 0..n-1, edges with u < v, and the weight
// of edges folded inside each node.
struct Level {
  std::size_t n = 0;
  std::vector<IndexEdge> edges;
  std::vector<double> loop;
};

class Mover {
 public:
  explicit Mover(const Level& level) : level_(level) {
    const std::size_t n = level.n;
    offsets_.assign(n + 1, 0);
    for (const auto& e : level.edges) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    neighbors_.resize(offsets_[n]);
    weights_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    degree_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) degree_[i] = 2.0 * level.loop[i];
    for (const auto& e : level.edges) {
      neighbors_[fill[e.u]] = e.v;
      weights_[fill[e.u]++] = e.weight;
      neighbors_[fill[e.v]] = e.u;
      weights_[fill[e.v]++] = e.weight;
      degree_[e.u] += e.weight;
      degree_[e.v] += e.weight;
    }
    for (double d : degree_) m2_ += d;
  }

  // Greedy passes over the nodes in the given order. Returns true if any node
  // changed community.
  bool run(std::vector<std::size_t>& comm, const std::vector<std::size_t>& order) const {
    const std::size_t n = level_.n;
    if (m2_ == 0.0) return false;
    std::vector<double> tot(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += degree_[i];
    std::vector<double> linkTo(n, -1.0);
    std::vector<std::size_t> touched;
    bool movedAny = false;
    for (int pass = 0; pass < 1000; ++pass) {
      bool moved = false;
      for (std::size_t i : order) {
        const std::size_t from = comm[i];
        const double ki = degree_[i];
        touched.clear();
        linkTo[from] = 0.0;
        touched.push_back(from);
        for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
          const std::size_t c = comm[neighbors_[p]];
          if (linkTo[c] < 0.0) {
            linkTo[c] = 0.0;
            touched.push_back(c);
          }
          linkTo[c] += weights_[p];
        }
        tot[from] -= ki;
        std::size_t best = from;
        double bestGain = linkTo[from] - tot[from] * ki / m2_;
        for (std::size_t c : touched) {
          const double gain = linkTo[c] - tot[c] * ki / m2_;
          if (gain > bestGain + 1e-12) {
            best = c;
            bestGain = gain;
          }
        }
        tot[best] += ki;
        comm[i] = best;
        for (std::size_t c : touched) linkTo[c] = -1.0;
        if (best != from) moved = true;
      }
      if (!moved) break;
      movedAny = true;
    }
    return movedAny;
  }

 private:
  const Level& level_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> neighbors_;
  std::vector<double> weights_;
  std::vector<double> degree_;
  double m2_ = 0.0;
};

// Renumbers `comm` densely and returns the community count.
std::size_t renumber(std::vector<std::size_t>& comm) {
  const std::size_t bound = comm.empty() ? 0 : *std::max_element(comm.begin(), comm.end()) + 1;
  std::vector<std::size_t> dense(bound, std::numeric_limits<std::size_t>::max());
  std::size_t k = 0;
  for (auto& c : comm) {
    if (dense[c] == std::numeric_limits<std::size_t>::max()) dense[c] = k++;
    c = dense[c];
  }
  return k;
}

Level aggregate(const Level& level, const std::vector<std::size_t>& comm, std::size_t k) {
  Level next;
  next.n = k;
  next.loop.assign(k, 0.0);
  for (std::size_t i = 0; i < level.n; ++i) next.loop[comm[i]] += level.loop[i];
  for (const auto& e : level.edges) {
    const std::size_t cu = comm[e.u];
    const std::size_t cv = comm[e.v];
    if (cu == cv) {
      next.loop[cu] += e.weight;
    } else {
      next.edges.push_back({std::min(cu, cv), std::max(cu, cv), e.weight});
    }
  }
  mergeParallel(next.edges);
  return next;
}

}  // namespace

StaticPartition louvain(const WeightedGraph& graph, std::uint64_t seed,
                        const std::optional<StaticPartition>& seedPartition) {
  const NodeSet& nodes = graph.nodes();
  if (nodes.empty()) throw Error("louvain needs at least one node");
  Level level;
  level.n = nodes.size();
  level.loop.assign(level.n, 0.0);
  for (const auto& e : graph.edges()) level.edges.push_back({indexOf(nodes, e.u), indexOf(nodes, e.v), e.weight});

  std::vector<std::size_t> comm(level.n);
  if (seedPartition) {
    const std::size_t base = seedPartition->numCommunities();
    for (std::size_t i = 0; i < level.n; ++i) {
      const auto c = seedPartition->of(nodes[i]);
      comm[i] = c ? *c : base + i;
    }
    renumber(comm);
  } else {
    for (std::size_t i = 0; i < level.n; ++i) comm[i] = i;
  }

  Rng rng = makeRng({seed, 0x6c6f7576ULL});
  std::vector<std::size_t> membership(level.n);
  for (std::size_t i = 0; i < level.n; ++i) membership[i] = i;

  for (std::size_t depth = 0;; ++depth) {
    std::vector<std::size_t> order(level.n);
    for (std::size_t i = 0; i < level.n; ++i) order[i] = i;
    shuffle(order, rng);
    const bool moved = Mover(level).run(comm, order);
    const bool forceAggregate = depth == 0 && seedPartition.has_value();
    const std::size_t k = renumber(comm);
    for (auto& m : membership) m = comm[m];
    if (!moved && !forceAggregate) break;
    if (k == level.n && !moved) break;
    level = aggregate(level, comm, k);
    comm.resize(k);
    for (std::size_t i = 0; i < k; ++i) comm[i] = i;
  }
  return StaticPartition(nodes, membership);
}

StaticPartition louvain(const Snapshot& snapshot, std::uint64_t seed,
                        const std::optional<StaticPartition>& seedPartition) {
  return louvain(WeightedGraph::fromSnapshot(snapshot), seed, seedPartition);
}

}  // namespace dynbench
