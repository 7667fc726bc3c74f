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

#include "dynbench/detectors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "dynbench/random.hpp"

namespace dynbench {

double jaccard(const NodeSet& a, const NodeSet& b) {
  if (a.empty() && b.empty()) throw Error("jaccard of two empty sets is undefined");
  std::size_t inter = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

namespace {

template <typename Fn>
void parallelFor(std::size_t n, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failureMutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned k = 0; k < count; ++k) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Best partner per community, or npos when none reaches the threshold.
struct Best {
  double score = -1.0;
  std::size_t index = static_cast<std::size_t>(-1);

  void offer(double s, std::size_t i) {
    if (s > score || (s == score && i < index)) {
      score = s;
      index = i;
    }
  }
};

}  // namespace

LongitudinalPartition matchLabels(const std::vector<StaticPartition>& partitions, const MatchingParams& params) {
  if (!(params.jaccardThreshold >= 0.0 && params.jaccardThreshold <= 1.0)) {
    throw Error("jaccard threshold must lie in [0, 1]");
  }
  LongitudinalPartition out(partitions.size());
  std::size_t nextLabel = 0;
  std::vector<Label> prevLabels;
  std::vector<std::size_t> prevSizes;
  for (std::size_t t = 0; t < partitions.size(); ++t) {
    const StaticPartition& cur = partitions[t];
    const std::size_t k = cur.numCommunities();
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t c : cur.assignment()) ++sizes[c];

    std::vector<std::optional<Label>> labels(k);
    if (t > 0) {
      const StaticPartition& prev = partitions[t - 1];
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> overlap;  // (prev, cur) -> |intersection|
      for (std::size_t i = 0; i < cur.nodes().size(); ++i) {
        if (auto p = prev.of(cur.nodes()[i])) ++overlap[{*p, cur.assignment()[i]}];
      }
      std::vector<Best> bestCur(prev.numCommunities());
      std::vector<Best> bestPrev(k);
      for (const auto& [key, inter] : overlap) {
        const auto [a, b] = key;
        const double j =
            static_cast<double>(inter) / static_cast<double>(prevSizes[a] + sizes[b] - inter);
        if (j < params.jaccardThreshold) continue;
        bestCur[a].offer(j, b);
        bestPrev[b].offer(j, a);
      }
      for (std::size_t b = 0; b < k; ++b) {
        const std::size_t a = bestPrev[b].index;
        if (a != static_cast<std::size_t>(-1) && bestCur[a].index == b) labels[b] = prevLabels[a];
      }
    }
    prevLabels.clear();
    for (std::size_t c = 0; c < k; ++c) {
      if (!labels[c]) labels[c] = Label("D" + std::to_string(nextLabel++));
      prevLabels.push_back(*labels[c]);
    }
    prevSizes = sizes;
    for (std::size_t i = 0; i < cur.nodes().size(); ++i) {
      out.set(cur.nodes()[i], static_cast<Step>(t), labels[cur.assignment()[i]]);
    }
  }
  return out;
}

std::uint64_t stepSeed(std::uint64_t seed, Step t) { return mixKey({seed, t}); }

std::vector<StaticPartition> staticPartitions(const DynamicGraph& g, std::uint64_t seed, unsigned jobs) {
  std::vector<StaticPartition> parts(g.numSteps());
  parallelFor(g.numSteps(), jobs, [&](std::size_t t) {
    const Snapshot& s = g.at(static_cast<Step>(t));
    if (!s.nodes.empty()) parts[t] = louvain(s, stepSeed(seed, static_cast<Step>(t)));
  });
  return parts;
}

LongitudinalPartition noSmoothing(const DynamicGraph& g, std::uint64_t seed, unsigned jobs,
                                  const MatchingParams& matching) {
  return matchLabels(staticPartitions(g, seed, jobs), matching);
}

LongitudinalPartition implicitGlobal(const DynamicGraph& g, std::uint64_t seed, const MatchingParams& matching) {
  std::vector<StaticPartition> parts(g.numSteps());
  for (Step t = 0; t < g.numSteps(); ++t) {
    const Snapshot& s = g.at(t);
    if (s.nodes.empty()) continue;
    std::optional<StaticPartition> start;
    if (t > 0 && !parts[t - 1].nodes().empty()) start = parts[t - 1];
    parts[t] = louvain(s, stepSeed(seed, t), start);
  }
  return matchLabels(parts, matching);
}

LongitudinalPartition smoothedGraph(const DynamicGraph& g, std::uint64_t seed, const SmoothedGraphParams& params,
                                    const MatchingParams& matching) {
  const double a = params.alphaSG;
  if (!(a >= 0.0 && a <= 1.0)) throw Error("smoothing coefficient must lie in [0, 1]");
  std::vector<StaticPartition> parts(g.numSteps());
  for (Step t = 0; t < g.numSteps(); ++t) {
    const Snapshot& s = g.at(t);
    if (s.nodes.empty()) continue;
    std::vector<WeightedEdge> edges;
    edges.reserve(s.edges.size());
    for (const auto& e : s.edges) edges.push_back({e.u, e.v, a * 1.0});
    if (t > 0 && a < 1.0) {
      // Co-membership only contributes inside previous communities.
      for (const NodeSet& c : parts[t - 1].communities()) {
        NodeSet alive;
        std::set_intersection(c.begin(), c.end(), s.nodes.begin(), s.nodes.end(), std::back_inserter(alive));
        for (std::size_t i = 0; i < alive.size(); ++i) {
          for (std::size_t j = i + 1; j < alive.size(); ++j) edges.push_back({alive[i], alive[j], 1.0 - a});
        }
      }
    }
    parts[t] = louvain(WeightedGraph(s.nodes, std::move(edges)), stepSeed(seed, t));
  }
  return matchLabels(parts, matching);
}

WeightedGraph survivalGraph(const std::vector<StaticPartition>& partitions, const LabelSmoothingParams& params) {
  if (!(params.jaccardThreshold >= 0.0 && params.jaccardThreshold <= 1.0)) {
    throw Error("jaccard threshold must lie in [0, 1]");
  }
  std::vector<std::size_t> offset(partitions.size() + 1, 0);
  for (std::size_t t = 0; t < partitions.size(); ++t) offset[t + 1] = offset[t] + partitions[t].numCommunities();
  const std::size_t total = offset.back();
  std::vector<Step> stepOf(total);
  std::vector<std::size_t> sizes(total, 0);
  // node -> global community ids, in step order
  std::map<NodeId, std::vector<std::size_t>> occurrences;
  for (std::size_t t = 0; t < partitions.size(); ++t) {
    for (std::size_t c = offset[t]; c < offset[t + 1]; ++c) stepOf[c] = static_cast<Step>(t);
    const auto& p = partitions[t];
    for (std::size_t i = 0; i < p.nodes().size(); ++i) {
      const std::size_t gid = offset[t] + p.assignment()[i];
      ++sizes[gid];
      occurrences[p.nodes()[i]].push_back(gid);
    }
  }
  std::vector<std::vector<NodeId>> members(total);
  for (const auto& [node, occ] : occurrences) {
    for (std::size_t gid : occ) members[gid].push_back(node);
  }

  NodeSet nodes(total);
  for (std::size_t i = 0; i < total; ++i) nodes[i] = static_cast<NodeId>(i);
  std::vector<WeightedEdge> edges;
  std::vector<std::size_t> count(total, 0);
  std::vector<std::size_t> touched;
  for (std::size_t x = 0; x < total; ++x) {
    touched.clear();
    for (NodeId v : members[x]) {
      const auto& occ = occurrences.at(v);
      auto it = std::upper_bound(occ.begin(), occ.end(), x);
      for (; it != occ.end(); ++it) {
        const std::size_t y = *it;
        if (stepOf[y] == stepOf[x]) continue;
        if (params.window && stepOf[y] - stepOf[x] > *params.window) break;
        if (count[y]++ == 0) touched.push_back(y);
      }
    }
    for (std::size_t y : touched) {
      const double j = static_cast<double>(count[y]) / static_cast<double>(sizes[x] + sizes[y] - count[y]);
      if (j >= params.jaccardThreshold && j > 0.0) {
        edges.push_back({static_cast<NodeId>(x), static_cast<NodeId>(y), j});
      }
      count[y] = 0;
    }
  }
  return WeightedGraph(std::move(nodes), std::move(edges));
}

LongitudinalPartition labelSmoothing(const DynamicGraph& g, std::uint64_t seed, const LabelSmoothingParams& params,
                                     unsigned jobs) {
  const auto parts = staticPartitions(g, seed, jobs);
  const WeightedGraph survival = survivalGraph(parts, params);
  LongitudinalPartition out(g.numSteps());
  if (survival.nodes().empty()) return out;
  const StaticPartition groups = louvain(survival, mixKey({seed, 0x7375727669766cULL}));
  std::size_t gid = 0;
  for (std::size_t t = 0; t < parts.size(); ++t) {
    const auto& p = parts[t];
    for (std::size_t i = 0; i < p.nodes().size(); ++i) {
      const std::size_t group = groups.assignment()[gid + p.assignment()[i]];
      out.set(p.nodes()[i], static_cast<Step>(t), Label("S" + std::to_string(group)));
    }
    gid += p.numCommunities();
  }
  return out;
}

const std::vector<std::string>& detectorNames() {
  static const std::vector<std::string> names = {"no-smoothing", "implicit-global", "smoothed-graph",
                                                 "label-smoothing"};
  return names;
}

const Detector& findDetector(const std::string& name) {
  static const std::map<std::string, Detector> registry = {
      {"no-smoothing",
       [](const DynamicGraph& g, const DetectorOptions& o) {
         return noSmoothing(g, o.seed, o.jobs, {o.jaccardThreshold});
       }},
      {"implicit-global",
       [](const DynamicGraph& g, const DetectorOptions& o) { return implicitGlobal(g, o.seed, {o.jaccardThreshold}); }},
      {"smoothed-graph",
       [](const DynamicGraph& g, const DetectorOptions& o) {
         return smoothedGraph(g, o.seed, {o.alphaSG}, {o.jaccardThreshold});
       }},
      {"label-smoothing",
       [](const DynamicGraph& g, const DetectorOptions& o) {
         return labelSmoothing(g, o.seed, {o.jaccardThreshold, o.window}, o.jobs);
       }},
  };
  auto it = registry.find(name);
  if (it == registry.end()) {
    std::string known;
    for (const auto& n : detectorNames()) known += (known.empty() ? "" : ", ") + n;
    throw Error("unknown detector '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

}  // namespace dynbench
