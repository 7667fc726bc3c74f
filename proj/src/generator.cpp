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

#include "dynbench/generator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <unordered_set>

namespace dynbench {

GeneratorParams GeneratorParams::fromMu(double mu, double betaR, std::uint64_t seed) {
  GeneratorParams p;
  p.alpha = 1.0 - mu;
  p.beta = mu;
  p.betaR = betaR;
  p.seed = seed;
  return p;
}

void GeneratorParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("alpha must lie in (0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error("beta must lie in [0, 1]");
  if (!(betaR >= 0.0 && betaR <= 1.0)) throw Error("beta-r must lie in [0, 1]");
}

double AffinityOracle::operator()(NodeId u, NodeId v) const {
  if (u == v) throw Error("affinity is undefined for a node with itself");
  const std::uint64_t key = mixKey({seed_, std::min(u, v), std::max(u, v)});
  return static_cast<double>(key >> 11) * 0x1.0p-53;
}

double meanDegree(std::size_t nc, double alpha) {
  if (nc == 0) throw Error("community size must be positive");
  return std::pow(static_cast<double>(nc - 1), alpha);
}

double internalDensity(std::size_t nc, double alpha) {
  if (nc < 2) throw Error("internal density needs at least 2 nodes");
  return std::pow(static_cast<double>(nc - 1), alpha - 1.0);
}

std::size_t internalEdgeCount(std::size_t nc, double alpha) {
  if (nc == 0) throw Error("community size must be positive");
  const double x = static_cast<double>(nc) * meanDegree(nc, alpha) / 2.0;
  const auto count = static_cast<std::size_t>(std::ceil(x - 1e-9));
  return std::min(count, nc * (nc - 1) / 2);
}

double externalDensity(std::size_t totalNodes, double alpha, double beta) {
  if (totalNodes < 2) throw Error("external density needs at least 2 nodes");
  return beta * internalDensity(totalNodes, alpha);
}

namespace {

struct Scored {
  double score;
  Edge edge;
};

// Higher affinity first, then smaller edge.
bool better(const Scored& x, const Scored& y) {
  if (x.score != y.score) return x.score > y.score;
  return x.edge < y.edge;
}

template <typename Visit>
void forEachCandidate(const NodeSet& a, const NodeSet& b, Visit&& visit) {
  if (b.empty()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) visit(Edge{a[i], a[j]});
    }
  } else {
    for (NodeId x : a) {
      for (NodeId y : b) visit(makeEdge(x, y));
    }
  }
}

std::size_t candidateCount(const NodeSet& a, const NodeSet& b) {
  return b.empty() ? a.size() * (a.size() - (a.empty() ? 0 : 1)) / 2 : a.size() * b.size();
}

std::vector<Edge> sortedUnion(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

std::vector<Edge> blockEdges(const AffinityOracle& omega, const NodeSet& a, const NodeSet& b, std::size_t q) {
  if (!b.empty() && intersects(a, b)) throw Error("blocks must be disjoint");
  const std::size_t candidates = candidateCount(a, b);
  std::vector<Edge> out;
  if (q == 0 || candidates == 0) return out;
  if (q >= candidates) {
    out.reserve(candidates);
    forEachCandidate(a, b, [&](const Edge& e) { out.push_back(e); });
    std::sort(out.begin(), out.end());
    return out;
  }
  // Bounded heap whose top is the worst retained pair.
  const auto cmp = [](const Scored& x, const Scored& y) { return better(x, y); };
  std::priority_queue<Scored, std::vector<Scored>, decltype(cmp)> heap(cmp);
  forEachCandidate(a, b, [&](const Edge& e) {
    const Scored s{omega(e.u, e.v), e};
    if (heap.size() < q) {
      heap.push(s);
    } else if (better(s, heap.top())) {
      heap.pop();
      heap.push(s);
    }
  });
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back(heap.top().edge);
    heap.pop();
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> blockEdgesByFraction(const AffinityOracle& omega, const NodeSet& a, const NodeSet& b,
                                       double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw Error("target fraction must lie in [0, 1]");
  const auto q = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(candidateCount(a, b))));
  return blockEdges(omega, a, b, q);
}

std::vector<Edge> intraBlockEdges(const AffinityOracle& omega, const NodeSet& nodes, double alpha) {
  if (nodes.empty()) return {};
  return blockEdges(omega, nodes, {}, internalEdgeCount(nodes.size(), alpha));
}

std::vector<Edge> interBlockEdges(const AffinityOracle& omega, const NodeSet& a, const NodeSet& b,
                                  double externalFraction) {
  if (a.empty() || b.empty()) return {};
  return blockEdgesByFraction(omega, a, b, externalFraction);
}

TransitionPlan planTransition(const AffinityOracle& omega, std::span<const Edge> before,
                              std::span<const Edge> after) {
  std::vector<Scored> adds;
  std::vector<Scored> removes;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < before.size() || j < after.size()) {
    if (j == after.size() || (i < before.size() && before[i] < after[j])) {
      removes.push_back({omega(before[i].u, before[i].v), before[i]});
      ++i;
    } else if (i == before.size() || after[j] < before[i]) {
      adds.push_back({omega(after[j].u, after[j].v), after[j]});
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  std::sort(adds.begin(), adds.end(), better);
  std::sort(removes.begin(), removes.end(), [](const Scored& x, const Scored& y) {
    if (x.score != y.score) return x.score < y.score;
    return x.edge < y.edge;
  });

  TransitionPlan plan;
  plan.modifications.reserve(adds.size() + removes.size());
  const std::size_t na = adds.size();
  const std::size_t nr = removes.size();
  std::size_t ai = 0;
  std::size_t ri = 0;
  while (ai < na || ri < nr) {
    // Take an addition when its relative progress would not overtake removals.
    const bool takeAdd = ri == nr || (ai < na && (ai + 1) * nr <= (ri + 1) * na);
    if (takeAdd) {
      plan.modifications.push_back({true, adds[ai++].edge});
    } else {
      plan.modifications.push_back({false, removes[ri++].edge});
    }
  }
  return plan;
}

std::vector<Edge> layoutEdges(const AffinityOracle& omega, std::span<const NodeSet> blocks, double alpha) {
  std::vector<Edge> all;
  for (const auto& b : blocks) {
    auto e = intraBlockEdges(omega, b, alpha);
    all.insert(all.end(), e.begin(), e.end());
  }
  return sortedUnion(std::move(all));
}

NoiseResult applyNoise(const Snapshot& snapshot, double betaR, Rng& rng) {
  if (!(betaR >= 0.0 && betaR <= 1.0)) throw Error("beta-r must lie in [0, 1]");
  NoiseResult result;
  const std::size_t m = snapshot.edges.size();
  const auto k = static_cast<std::size_t>(std::floor(betaR * static_cast<double>(m) + 1e-9));
  if (k == 0) {
    result.snapshot = snapshot;
    return result;
  }
  // Partial Fisher-Yates picks the removed edges.
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::vector<bool> removed(m, false);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + uniformIndex(rng, m - i)]);
    removed[idx[i]] = true;
  }

  const NodeSet& nodes = snapshot.nodes;
  const std::size_t n = nodes.size();
  const std::size_t pairs = n * (n - 1) / 2;
  std::size_t available = pairs - m;
  std::set<Edge> added;
  for (std::size_t i = 0; i < k; ++i) {
    if (available == 0) {
      ++result.skipped;
      continue;
    }
    while (true) {
      const auto x = uniformIndex(rng, n);
      const auto y = uniformIndex(rng, n);
      if (x == y) continue;
      const Edge e = makeEdge(nodes[x], nodes[y]);
      if (snapshot.hasEdge(e) || added.count(e) != 0) continue;
      added.insert(e);
      --available;
      break;
    }
    ++result.rewired;
  }

  std::vector<Edge> edges;
  edges.reserve(m - k + added.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (!removed[i]) edges.push_back(snapshot.edges[i]);
  }
  edges.insert(edges.end(), added.begin(), added.end());
  result.snapshot = Snapshot::make(snapshot.step, snapshot.nodes, std::move(edges));
  return result;
}

std::size_t DsabmTransitionCost::steps(std::span<const NodeSet> before, std::span<const NodeSet> after) const {
  const auto b = layoutEdges(omega_, before, params_.alpha);
  const auto a = layoutEdges(omega_, after, params_.alpha);
  std::vector<Edge> diff;
  std::set_symmetric_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(diff));
  return diff.size();
}

namespace {

struct LiveTransition {
  const TransitionSpan* span = nullptr;
  TransitionPlan plan;
  std::set<Edge> state;
  std::size_t applied = 0;
};

}  // namespace

DynamicGraph generate(const EvolutionPlan& plan, const GeneratorParams& params, const GenerateOptions& options,
                      GenerationTrace* trace) {
  params.validate();
  const AffinityOracle omega(params.seed);
  const Step numSteps = options.stepLimit ? std::min(*options.stepLimit, plan.numSteps) : plan.numSteps;

  for (const auto& c : plan.communities) {
    if (c.from > c.to || c.to > plan.numSteps) throw Error("structure/step mismatch: community span outside the plan");
  }
  for (const auto& tr : plan.transitions) {
    if (tr.start > tr.end || tr.end > plan.numSteps) {
      throw Error("structure/step mismatch: transition outside the plan");
    }
  }

  // Spans and transitions sorted by start so that each step only scans the
  // live ones.
  std::vector<const CommunitySpan*> spans;
  for (const auto& c : plan.communities) spans.push_back(&c);
  std::stable_sort(spans.begin(), spans.end(), [](auto* x, auto* y) { return x->from < y->from; });
  std::vector<const TransitionSpan*> transitions;
  for (const auto& tr : plan.transitions) transitions.push_back(&tr);
  std::stable_sort(transitions.begin(), transitions.end(), [](auto* x, auto* y) { return x->start < y->start; });

  struct LiveSpan {
    const CommunitySpan* span;
    std::vector<Edge> edges;
  };
  std::vector<LiveSpan> liveSpans;
  std::vector<LiveTransition> liveTransitions;
  std::size_t nextSpan = 0;
  std::size_t nextTransition = 0;

  std::vector<NodeSet> cachedBlocks;
  std::vector<Edge> cachedExternal;
  bool haveCache = false;

  if (trace != nullptr) *trace = GenerationTrace{};

  DynamicGraph graph;
  for (Step t = 0; t < numSteps; ++t) {
    std::erase_if(liveSpans, [t](const LiveSpan& s) { return s.span->to <= t; });
    while (nextSpan < spans.size() && spans[nextSpan]->from <= t) {
      const CommunitySpan* s = spans[nextSpan++];
      if (s->to > t) liveSpans.push_back({s, intraBlockEdges(omega, s->nodes, params.alpha)});
    }
    std::erase_if(liveTransitions, [t](const LiveTransition& l) { return l.span->end <= t; });
    while (nextTransition < transitions.size() && transitions[nextTransition]->start <= t) {
      const TransitionSpan* tr = transitions[nextTransition++];
      if (tr->end <= t) continue;
      LiveTransition live;
      live.span = tr;
      const auto before = layoutEdges(omega, tr->before, params.alpha);
      const auto after = layoutEdges(omega, tr->after, params.alpha);
      live.plan = planTransition(omega, before, after);
      if (live.plan.size() != static_cast<std::size_t>(tr->end - tr->start)) {
        throw Error("structure/step mismatch: transition lasts " + std::to_string(tr->end - tr->start) +
                    " steps but its plan has " + std::to_string(live.plan.size()) + " modifications");
      }
      live.state.insert(before.begin(), before.end());
      liveTransitions.push_back(std::move(live));
    }

    std::vector<Edge> internal;
    std::vector<NodeSet> blocks;
    for (const auto& s : liveSpans) {
      internal.insert(internal.end(), s.edges.begin(), s.edges.end());
      blocks.push_back(s.span->nodes);
    }
    for (auto& live : liveTransitions) {
      const std::size_t target = t - live.span->start + 1;
      while (live.applied < target) {
        const auto& mod = live.plan.modifications[live.applied++];
        if (mod.add) {
          live.state.insert(mod.edge);
        } else {
          live.state.erase(mod.edge);
        }
      }
      internal.insert(internal.end(), live.state.begin(), live.state.end());
      // Interim membership: before-blocks, then newcomers grouped by their
      // after-block.
      NodeSet beforeNodes;
      for (const auto& b : live.span->before) {
        if (!b.empty()) blocks.push_back(b);
        beforeNodes = setUnion(beforeNodes, b);
      }
      for (const auto& a : live.span->after) {
        NodeSet rest = setDifference(a, beforeNodes);
        if (!rest.empty()) blocks.push_back(std::move(rest));
      }
    }
    internal = sortedUnion(std::move(internal));
    std::sort(blocks.begin(), blocks.end());

    NodeSet present;
    for (const auto& b : blocks) present = setUnion(present, b);

    if (!haveCache || blocks != cachedBlocks) {
      cachedExternal.clear();
      if (params.beta > 0.0 && present.size() >= 2) {
        const double pext = externalDensity(present.size(), params.alpha, params.beta);
        for (std::size_t i = 0; i < blocks.size(); ++i) {
          for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            auto e = interBlockEdges(omega, blocks[i], blocks[j], pext);
            cachedExternal.insert(cachedExternal.end(), e.begin(), e.end());
          }
        }
      }
      cachedBlocks = blocks;
      haveCache = true;
    }

    std::vector<Edge> edges = internal;
    edges.insert(edges.end(), cachedExternal.begin(), cachedExternal.end());
    Snapshot snap = Snapshot::make(t, std::move(present), sortedUnion(std::move(edges)));
    if (params.betaR > 0.0) {
      Rng rng = makeRng({params.seed, t, 0x6e6f697365ULL});
      NoiseResult noisy = applyNoise(snap, params.betaR, rng);
      if (trace != nullptr) trace->noiseSkipped += noisy.skipped;
      snap = std::move(noisy.snapshot);
    }
    if (trace != nullptr) {
      trace->internalEdges.push_back(std::move(internal));
      trace->activeTransitions.push_back(liveTransitions.size());
    }
    graph.append(std::move(snap));
  }
  return graph;
}

}  // namespace dynbench
