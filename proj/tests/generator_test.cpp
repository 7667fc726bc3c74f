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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dynbench/dsl.hpp"
#include "dynbench/random_scenario.hpp"
#include "helpers.hpp"

namespace dynbench {
namespace {

NodeSet range(NodeId from, NodeId to) {
  NodeSet out;
  for (NodeId n = from; n < to; ++n) out.push_back(n);
  return out;
}

// All candidate pairs ranked by decreasing affinity, ties by pair order.
std::vector<Edge> rankedPairs(const AffinityOracle& omega, const NodeSet& a, const NodeSet& b) {
  std::vector<Edge> pairs;
  if (b.empty()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) pairs.push_back(makeEdge(a[i], a[j]));
    }
  } else {
    for (NodeId u : a) {
      for (NodeId v : b) pairs.push_back(makeEdge(u, v));
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&](const Edge& x, const Edge& y) {
    const double ox = omega(x.u, x.v);
    const double oy = omega(y.u, y.v);
    return ox != oy ? ox > oy : x < y;
  });
  return pairs;
}

std::vector<Edge> topPairs(const AffinityOracle& omega, const NodeSet& a, const NodeSet& b, std::size_t q) {
  auto pairs = rankedPairs(omega, a, b);
  pairs.resize(std::min(q, pairs.size()));
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<Edge> edgesWithin(const std::vector<Edge>& edges, const NodeSet& block) {
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (std::binary_search(block.begin(), block.end(), e.u) && std::binary_search(block.begin(), block.end(), e.v)) {
      out.push_back(e);
    }
  }
  return out;
}

std::size_t symmetricDifference(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  std::vector<Edge> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

// Asymptotic Kolmogorov distribution tail.
double ksPValue(double d, std::size_t n) {
  const double sq = std::sqrt(static_cast<double>(n));
  const double lambda = (sq + 0.12 + 0.11 / sq) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    sum += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return std::clamp(sum, 0.0, 1.0);
}

TEST(AffinityTest, SymmetricDeterministicAndSeeded) {
  const AffinityOracle omega(1);
  EXPECT_EQ(omega(3, 7), omega(7, 3));
  EXPECT_EQ(omega(3, 7), AffinityOracle(1)(3, 7));
  EXPECT_NE(omega(3, 7), AffinityOracle(2)(3, 7));
  EXPECT_THROW(omega(4, 4), Error);
}

TEST(AffinityTest, UniformOnUnitInterval) {
  const AffinityOracle omega(42);
  std::vector<double> xs;
  for (NodeId u = 0; xs.size() < 100000; ++u) {
    for (NodeId v = u + 1; v < u + 11 && xs.size() < 100000; ++v) xs.push_back(omega(u, v));
  }
  std::sort(xs.begin(), xs.end());
  double d = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ASSERT_GE(xs[i], 0.0);
    ASSERT_LE(xs[i], 1.0);
    d = std::max({d, (i + 1) / n - xs[i], xs[i] - i / n});
  }
  EXPECT_GT(ksPValue(d, xs.size()), 0.01) << "D = " << d;
  EXPECT_EQ(std::adjacent_find(xs.begin(), xs.end()), xs.end());
}

TEST(DensityTest, MeanDegree) {
  EXPECT_DOUBLE_EQ(meanDegree(9, 1.0), 8.0);
  EXPECT_NEAR(meanDegree(5, 0.8), std::exp(0.8 * std::log(4.0)), 1e-12);
  EXPECT_NEAR(meanDegree(5, 0.8), 3.0314, 1e-4);
  EXPECT_DOUBLE_EQ(meanDegree(1, 0.8), 0.0);
}

TEST(DensityTest, InternalDensity) {
  EXPECT_DOUBLE_EQ(internalDensity(5, 1.0), 1.0);
  EXPECT_NEAR(internalDensity(5, 0.8), 1.0 / std::exp(0.2 * std::log(4.0)), 1e-12);
  EXPECT_NEAR(internalDensity(5, 0.8), 0.7579, 1e-4);
  for (std::size_t n = 2; n < 50; ++n) EXPECT_GT(internalDensity(n, 0.7), internalDensity(n + 1, 0.7));
  EXPECT_THROW(internalDensity(1, 0.8), Error);
}

TEST(DensityTest, InternalEdgeCount) {
  EXPECT_EQ(internalEdgeCount(4, 1.0), 6u);
  // 5 * 4^0.8 / 2 = 7.5786 rounds up.
  EXPECT_NEAR(5 * std::exp(0.8 * std::log(4.0)) / 2, 7.5786, 1e-4);
  EXPECT_EQ(internalEdgeCount(5, 0.8), 8u);
  EXPECT_EQ(internalEdgeCount(1, 0.8), 0u);
  for (std::size_t n = 2; n < 60; ++n) EXPECT_EQ(internalEdgeCount(n, 1.0), n * (n - 1) / 2);
}

TEST(DensityTest, ExternalDensity) {
  EXPECT_DOUBLE_EQ(externalDensity(50, 0.8, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(externalDensity(41, 1.0, 0.3), 0.3);
  EXPECT_NEAR(externalDensity(101, 0.8, 0.25), 0.25 / std::exp(0.2 * std::log(100.0)), 1e-12);
  EXPECT_NEAR(externalDensity(101, 0.8, 0.25), 0.0995, 1e-4);
  EXPECT_THROW(externalDensity(1, 0.8, 0.25), Error);
}

TEST(GeneratorParamsTest, Validation) {
  const GeneratorParams p = GeneratorParams::fromMu(0.2, 0.01, 3);
  EXPECT_DOUBLE_EQ(p.alpha, 0.8);
  EXPECT_DOUBLE_EQ(p.beta, 0.2);
  EXPECT_NO_THROW(p.validate());
  EXPECT_THROW((GeneratorParams{0.0, 0.1, 0.0, 0}).validate(), Error);
  EXPECT_THROW((GeneratorParams{1.1, 0.1, 0.0, 0}).validate(), Error);
  EXPECT_THROW((GeneratorParams{0.9, -0.1, 0.0, 0}).validate(), Error);
  EXPECT_THROW((GeneratorParams{0.9, 0.1, 1.5, 0}).validate(), Error);
}

TEST(BlockEdgesTest, MatchesBruteForceRanking) {
  const AffinityOracle omega(7);
  const NodeSet a = range(0, 12);
  const NodeSet b = range(20, 29);
  for (std::size_t q : {0u, 1u, 5u, 30u, 66u, 200u}) {
    EXPECT_EQ(blockEdges(omega, a, {}, q), topPairs(omega, a, {}, q)) << q;
    EXPECT_EQ(blockEdges(omega, a, b, q), topPairs(omega, a, b, q)) << q;
  }
}

TEST(BlockEdgesTest, FractionExtremes) {
  const AffinityOracle omega(7);
  const NodeSet a = range(0, 6);
  EXPECT_EQ(blockEdgesByFraction(omega, a, {}, 1.0).size(), 15u);
  EXPECT_TRUE(blockEdgesByFraction(omega, a, {}, 0.0).empty());
  EXPECT_EQ(blockEdgesByFraction(omega, a, range(6, 10), 0.5).size(), 12u);
  EXPECT_EQ(intraBlockEdges(omega, a, 0.8), intraBlockEdges(omega, a, 0.8));
  EXPECT_EQ(intraBlockEdges(omega, a, 0.8).size(), internalEdgeCount(6, 0.8));
}

TEST(TransitionTest, TwoCliquesMerging) {
  const AffinityOracle omega(3);
  const std::vector<NodeSet> before{range(0, 4), range(4, 8)};
  const std::vector<NodeSet> after{range(0, 8)};
  const auto b = layoutEdges(omega, before, 1.0);
  const auto a = layoutEdges(omega, after, 1.0);
  EXPECT_EQ(b.size(), 12u);
  EXPECT_EQ(a.size(), 28u);
  const TransitionPlan plan = planTransition(omega, b, a);
  EXPECT_EQ(plan.size(), 16u);
  for (const auto& m : plan.modifications) EXPECT_TRUE(m.add);
  EXPECT_EQ(DsabmTransitionCost({1.0, 0.0, 0.0, 3}).steps(before, after), 16u);
  EXPECT_EQ(planTransition(omega, a, a).size(), 0u);
}

TEST(TransitionTest, PlanReachesTargetInAffinityOrder) {
  const AffinityOracle omega(11);
  for (double alpha : {0.6, 0.8, 0.95}) {
    const std::vector<NodeSet> before{range(0, 10), range(10, 25)};
    const std::vector<NodeSet> after{range(0, 6), range(6, 25)};
    const auto b = layoutEdges(omega, before, alpha);
    const auto a = layoutEdges(omega, after, alpha);
    const TransitionPlan plan = planTransition(omega, b, a);
    EXPECT_EQ(plan.size(), symmetricDifference(a, b));
    std::set<Edge> state(b.begin(), b.end());
    double lastAdd = 2.0;
    double lastRemove = -1.0;
    std::size_t adds = 0;
    std::size_t removes = 0;
    std::size_t totalAdds = 0;
    for (const auto& m : plan.modifications) totalAdds += m.add;
    const std::size_t totalRemoves = plan.size() - totalAdds;
    for (const auto& m : plan.modifications) {
      const double w = omega(m.edge.u, m.edge.v);
      if (m.add) {
        EXPECT_TRUE(state.insert(m.edge).second);
        EXPECT_LE(w, lastAdd);
        lastAdd = w;
        ++adds;
      } else {
        EXPECT_EQ(state.erase(m.edge), 1u);
        EXPECT_GE(w, lastRemove);
        lastRemove = w;
        ++removes;
      }
      // Neither queue runs more than one modification ahead of its share.
      const double done = static_cast<double>(adds + removes) / plan.size();
      EXPECT_LE(std::abs(adds - done * totalAdds), 1.0 + 1e-9);
      EXPECT_LE(std::abs(removes - done * totalRemoves), 1.0 + 1e-9);
    }
    EXPECT_EQ(std::vector<Edge>(state.begin(), state.end()), a);
  }
}

TEST(NoiseTest, ZeroNoiseIsIdentity) {
  const Snapshot s = testing::snapshotOf(0, range(0, 5), {{0, 1}, {1, 2}, {3, 4}});
  Rng rng = makeRng({1});
  const NoiseResult r = applyNoise(s, 0.0, rng);
  EXPECT_EQ(r.snapshot, s);
  EXPECT_EQ(r.rewired, 0u);
}

TEST(NoiseTest, RewiresFloorFraction) {
  const AffinityOracle omega(5);
  const NodeSet nodes = range(0, 200);
  auto edges = blockEdges(omega, nodes, {}, 1200);
  const Snapshot s = Snapshot::make(0, nodes, edges);
  ASSERT_EQ(s.edges.size(), 1200u);
  Rng rng = makeRng({9});
  const NoiseResult r = applyNoise(s, 0.01, rng);
  EXPECT_EQ(r.rewired, static_cast<std::size_t>(std::floor(0.01 * 1200)));
  EXPECT_EQ(r.rewired, 12u);
  EXPECT_EQ(r.skipped, 0u);
  EXPECT_EQ(r.snapshot.edges.size(), 1200u);
  EXPECT_EQ(r.snapshot.nodes, s.nodes);
  std::vector<Edge> removed;
  std::set_difference(s.edges.begin(), s.edges.end(), r.snapshot.edges.begin(), r.snapshot.edges.end(),
                      std::back_inserter(removed));
  EXPECT_EQ(removed.size(), 12u);
}

TEST(NoiseTest, CompleteGraphSkipsReplacements) {
  const AffinityOracle omega(5);
  const Snapshot s = Snapshot::make(0, range(0, 20), blockEdges(omega, range(0, 20), {}, 190));
  Rng rng = makeRng({9});
  const NoiseResult r = applyNoise(s, 0.1, rng);
  EXPECT_EQ(r.rewired + r.skipped, 19u);
  EXPECT_EQ(r.snapshot.edges.size(), 190u - r.skipped);
  EXPECT_GT(r.skipped, 0u);
}

ScenarioRun staticRun(const std::vector<std::size_t>& sizes, Step steps, const GeneratorParams& gp) {
  ScenarioBuilder b;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < sizes.size(); ++i) labels.emplace_back("c" + std::to_string(i));
  const auto c = b.initialize(sizes, labels);
  b.continueFor(c[0], steps - 1);
  return runScenario(b.events(), gp.seed, DsabmTransitionCost(gp));
}

TEST(GenerateTest, CliqueLimit) {
  const GeneratorParams gp{1.0, 0.0, 0.0, 4};
  const ScenarioRun run = staticRun({4, 7, 10}, 6, gp);
  const DynamicGraph g = generate(run.plan, gp);
  ASSERT_EQ(g.numSteps(), 6u);
  for (const Snapshot& s : g.snapshots()) {
    EXPECT_EQ(s.edges.size(), 6u + 21u + 45u);
    for (const auto& span : run.plan.communities) {
      EXPECT_EQ(edgesWithin(s.edges, span.nodes).size(), span.nodes.size() * (span.nodes.size() - 1) / 2);
    }
  }
}

TEST(GenerateTest, StableBlocksAndAssortativity) {
  const GeneratorParams gp{0.8, 0.25, 0.0, 8};
  const ScenarioRun run = staticRun({6, 12, 20}, 3, gp);
  const DynamicGraph g = generate(run.plan, gp);
  const AffinityOracle omega(gp.seed);
  for (const Snapshot& s : g.snapshots()) {
    std::size_t internal = 0;
    for (const auto& span : run.plan.communities) {
      if (span.from > s.step || s.step >= span.to) continue;
      const auto inside = edgesWithin(s.edges, span.nodes);
      EXPECT_EQ(inside, intraBlockEdges(omega, span.nodes, gp.alpha));
      internal += inside.size();
      const double n = static_cast<double>(span.nodes.size());
      const double pin = static_cast<double>(inside.size()) / (n * (n - 1) / 2);
      EXPECT_GT(pin, externalDensity(38, gp.alpha, gp.beta));
    }
    const double crossPairs = 6.0 * 12 + 6.0 * 20 + 12.0 * 20;
    const double pext = (s.edges.size() - internal) / crossPairs;
    EXPECT_NEAR(pext, externalDensity(38, gp.alpha, gp.beta), 0.01);
  }
}

TEST(GenerateTest, DeterministicAndSeedSensitive) {
  const auto events = dsl::compile(testing::listing1Text());
  GeneratorParams gp{0.9, 0.05, 0.01, 1};
  const ScenarioRun run = runScenario(events, gp.seed, DsabmTransitionCost(gp));
  EXPECT_EQ(generate(run.plan, gp), generate(run.plan, gp));
  GeneratorParams other = gp;
  other.seed = 2;
  const ScenarioRun otherRun = runScenario(events, other.seed, DsabmTransitionCost(other));
  EXPECT_NE(generate(run.plan, gp), generate(otherRun.plan, other));
  // Transition lengths depend on the affinity seed.
  EXPECT_THROW(generate(run.plan, other), Error);
}

TEST(GenerateTest, EconomyOfChange) {
  const auto events = dsl::compile(testing::listing1Text());
  const GeneratorParams gp{0.9, 0.05, 0.0, 1};
  const ScenarioRun run = runScenario(events, gp.seed, DsabmTransitionCost(gp));
  GenerationTrace trace;
  const DynamicGraph g = generate(run.plan, gp, {}, &trace);
  ASSERT_EQ(trace.internalEdges.size(), g.numSteps());
  for (Step t = 1; t < g.numSteps(); ++t) {
    std::size_t active = 0;
    for (const auto& e : run.truth.eventLog) active += e.start <= t && t < e.end;
    EXPECT_LE(symmetricDifference(trace.internalEdges[t - 1], trace.internalEdges[t]), active) << t;
  }
  const AffinityOracle omega(gp.seed);
  for (const auto& tr : run.plan.transitions) {
    if (tr.end >= g.numSteps()) continue;
    for (const auto& block : tr.after) {
      EXPECT_EQ(edgesWithin(g.at(tr.end).edges, block), intraBlockEdges(omega, block, gp.alpha));
    }
  }
}

TEST(GenerateTest, StepLimitTruncates) {
  const auto events = dsl::compile(testing::listing1Text());
  const GeneratorParams gp{0.9, 0.05, 0.01, 1};
  const ScenarioRun run = runScenario(events, gp.seed, DsabmTransitionCost(gp));
  const DynamicGraph full = generate(run.plan, gp);
  const DynamicGraph part = generate(run.plan, gp, {Step{40}});
  ASSERT_EQ(part.numSteps(), 40u);
  for (Step t = 0; t < 40; ++t) EXPECT_EQ(part.at(t), full.at(t));
}

TEST(GenerateTest, StructureMismatchFails) {
  EvolutionPlan plan;
  plan.numSteps = 10;
  plan.transitions.push_back({0, {NodeSet{0, 1, 2}}, {NodeSet{0, 1}, NodeSet{2}}, 0, 9});
  EXPECT_THROW(generate(plan, GeneratorParams{}), Error);
  plan.transitions.clear();
  plan.communities.push_back({CommunityId{0}, Label("a"), NodeSet{0, 1}, 0, 11});
  EXPECT_THROW(generate(plan, GeneratorParams{}), Error);
}

}  // namespace
}  // namespace dynbench
