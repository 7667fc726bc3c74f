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


#include "dynbench/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dynbench/random.hpp"
#include "oracles.hpp"

namespace dynbench {
namespace {

using testing::Oracle;

Clustering randomClustering(Rng& rng, std::size_t n, std::size_t k) {
  Clustering c(n);
  for (auto& x : c) x = uniformIndex(rng, k);
  return c;
}

LongitudinalPartition fromRows(const std::vector<std::vector<std::string>>& rows) {
  // rows[node][t]; "" is absent, "?" is undefined.
  std::size_t steps = 0;
  for (const auto& r : rows) steps = std::max(steps, r.size());
  LongitudinalPartition p(steps);
  for (NodeId n = 0; n < rows.size(); ++n) {
    for (Step t = 0; t < rows[n].size(); ++t) {
      if (rows[n][t].empty()) continue;
      if (rows[n][t] == "?") {
        p.set(n, t, std::nullopt);
      } else {
        p.set(n, t, Label(rows[n][t]));
      }
    }
  }
  return p;
}

LongitudinalPartition relabel(const LongitudinalPartition& p, const std::string& prefix) {
  LongitudinalPartition out(p.numSteps());
  for (Step t = 0; t < p.numSteps(); ++t) {
    for (const auto& [n, l] : p.at(t)) {
      out.set(n, t, l ? std::optional<Label>(Label(prefix + l->value + "'")) : std::nullopt);
    }
  }
  return out;
}

TEST(MetricOracleTest, SmallInstancesAgree) {
  Rng rng = makeRng({6});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + uniformIndex(rng, 8);
    const Clustering a = randomClustering(rng, n, 1 + uniformIndex(rng, 4));
    const Clustering b = randomClustering(rng, n, 1 + uniformIndex(rng, 4));
    EXPECT_NEAR(nmi(a, b), Oracle::nmi(a, b), 1e-10) << trial;
    EXPECT_NEAR(ami(a, b), Oracle::ami(a, b), 1e-10) << trial;
    EXPECT_NEAR(ari(a, b), Oracle::ari(a, b), 1e-10) << trial;
  }
}

TEST(MetricTest, IdenticalAndDegenerateCases) {
  const Clustering a = {0, 0, 1, 1, 2};
  const Clustering renamed = {5, 5, 3, 3, 0};
  EXPECT_DOUBLE_EQ(nmi(a, renamed), 1.0);
  EXPECT_DOUBLE_EQ(ami(a, renamed), 1.0);
  EXPECT_DOUBLE_EQ(ari(a, renamed), 1.0);
  const Clustering one = {0, 0, 0, 0};
  const Clustering singletons = {0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(nmi(one, singletons), 0.0);
  EXPECT_NEAR(ami(one, singletons), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(ari(one, singletons), 0.0);
}

TEST(MetricTest, StaticPartitionsNeedTheSameNodes) {
  const StaticPartition a({1, 2, 3}, {0, 0, 1});
  const StaticPartition b({1, 2, 4}, {0, 0, 1});
  EXPECT_THROW(nmi(a, b), Error);
  EXPECT_THROW(ami(a, b), Error);
  EXPECT_THROW(ari(a, b), Error);
  EXPECT_DOUBLE_EQ(ami(a, StaticPartition({1, 2, 3}, {4, 4, 2})), 1.0);
}

TEST(MetricTest, ChanceLevelForIndependentPartitions) {
  Rng rng = makeRng({8});
  double sumAmi = 0.0;
  double sumAri = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Clustering a = randomClustering(rng, 200, 5);
    const Clustering b = randomClustering(rng, 200, 7);
    const double x = ami(a, b);
    const double y = ari(a, b);
    EXPECT_LE(x, 1.0);
    EXPECT_LE(y, 1.0);
    sumAmi += x;
    sumAri += y;
  }
  EXPECT_LE(std::abs(sumAmi / 100), 0.05);
  EXPECT_LE(std::abs(sumAri / 100), 0.05);
}

TEST(StepScoresTest, SelfComparisonAndSkippedSteps) {
  const auto truth = fromRows({{"a", "a", "?", "b"}, {"a", "b", "?", "b"}, {"c", "c", "?", ""}});
  const StepScores s = avgStepScores(truth, truth, Similarity::kAmi);
  EXPECT_EQ(s.steps, (std::vector<Step>{0, 1, 3}));
  EXPECT_EQ(s.skipped, (std::vector<Step>{2}));
  EXPECT_DOUBLE_EQ(s.mean, 1.0);
  EXPECT_DOUBLE_EQ(avgStepScores(truth, truth, Similarity::kAri).mean, 1.0);
  // A found partition with one merged pair at step 0.
  const auto found = fromRows({{"x", "x", "x", "y"}, {"x", "y", "x", "y"}, {"x", "z", "x", ""}});
  const StepScores f = avgStepScores(truth, found, Similarity::kAri);
  ASSERT_EQ(f.perStep.size(), 3u);
  EXPECT_DOUBLE_EQ(f.perStep[0], ari(Clustering{0, 0, 1}, Clustering{0, 0, 0}));
  EXPECT_DOUBLE_EQ(f.mean, (f.perStep[0] + f.perStep[1] + f.perStep[2]) / 3);
}

TEST(StepScoresTest, ModularityPerStep) {
  DynamicGraph g;
  g.append(Snapshot::make(0, {0, 1, 2, 3, 4, 5}, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}));
  const auto found = fromRows({{"a"}, {"a"}, {"a"}, {"b"}, {"b"}, {"b"}});
  EXPECT_DOUBLE_EQ(avgModularity(g, found).mean, 0.5);
}

TEST(SmoothnessTest, PartitionLevel) {
  const auto constant = fromRows({{"a", "a", "a"}, {"a", "a", "a"}, {"b", "b", "b"}});
  EXPECT_DOUBLE_EQ(smP(constant, SmPMode::kSimilarity), 1.0);
  EXPECT_DOUBLE_EQ(smP(constant, SmPMode::kLiteral), 0.0);
  // Two unrelated partitions in alternation.
  const auto alternating = fromRows({{"a", "c", "a", "c"}, {"a", "d", "a", "d"}, {"b", "c", "b", "c"}, {"b", "d", "b", "d"}});
  const double expected = nmi(Clustering{0, 0, 1, 1}, Clustering{0, 1, 0, 1});
  EXPECT_NEAR(expected, 0.0, 1e-12);
  EXPECT_NEAR(smP(alternating), expected, 1e-12);
  EXPECT_NEAR(meanSuccessiveNmi(alternating), expected, 1e-12);
  EXPECT_THROW(smP(fromRows({{"a"}})), Error);
}

TEST(SmoothnessTest, NodeLevel) {
  EXPECT_DOUBLE_EQ(smN(fromRows({{"a", "a", "a"}})), 1.0);
  EXPECT_DOUBLE_EQ(smN(fromRows({{"a", "b", "b"}, {"c", "c", "c"}})), 0.5);
  const auto glitch = fromRows({{"A", "B", "A"}});
  EXPECT_EQ(labelChanges(glitch), 2u);
  EXPECT_DOUBLE_EQ(smN(glitch), 1.0 / 3.0);
  // Undefined or absent steps break the chain.
  EXPECT_EQ(labelChanges(fromRows({{"A", "?", "B", "", "C"}})), 0u);
}

TEST(SmoothnessTest, LabelLevel) {
  EXPECT_DOUBLE_EQ(smL(fromRows({{"a", "a"}, {"b", "b"}})), 1.0);
  EXPECT_NEAR(meanLabelEntropy(fromRows({{"a", "b"}})), std::log(2.0), 1e-15);
  // Node 0 keeps its label; node 1 spends 1/4 of its steps in A.
  const double h1 = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
  EXPECT_NEAR(h1, 0.5623351446, 1e-10);
  const auto toy = fromRows({{"A", "A", "A", "A"}, {"A", "B", "B", "B"}});
  EXPECT_NEAR(meanLabelEntropy(toy), h1 / 2, 1e-15);
  EXPECT_NEAR(smL(toy), 1.0 / (1.0 + h1 / 2), 1e-15);
}

TEST(SmoothnessTest, AddingAChangeNeverHelps) {
  Rng rng = makeRng({12});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<std::string>> rows(5, std::vector<std::string>(6));
    for (auto& r : rows) {
      for (auto& x : r) x = std::string(1, static_cast<char>('a' + uniformIndex(rng, 3)));
    }
    const auto before = fromRows(rows);
    const std::size_t n = uniformIndex(rng, 5);
    const std::size_t t = uniformIndex(rng, 6);
    rows[n][t] = "fresh";
    const auto after = fromRows(rows);
    EXPECT_LE(smN(after), smN(before));
    EXPECT_LE(smL(after), smL(before) + 1e-15);
  }
}

TEST(LongitudinalTest, IdentityRenamingAndSwap) {
  // Two communities over four steps; the found labels swap at step 2.
  const auto truth = fromRows({{"a", "a", "a", "a"}, {"a", "a", "a", "a"}, {"b", "b", "b", "b"}, {"b", "b", "b", "b"}});
  EXPECT_DOUBLE_EQ(lami(truth, truth), 1.0);
  EXPECT_DOUBLE_EQ(lari(truth, truth), 1.0);
  EXPECT_DOUBLE_EQ(lami(truth, relabel(truth, "r")), 1.0);
  const auto swapped = fromRows({{"a", "a", "b", "b"}, {"a", "a", "b", "b"}, {"b", "b", "a", "a"}, {"b", "b", "a", "a"}});
  EXPECT_DOUBLE_EQ(avgStepScores(truth, swapped, Similarity::kAmi).mean, 1.0);
  EXPECT_LT(lami(truth, swapped), 1.0);
  EXPECT_LT(lari(truth, swapped), 1.0);
  EXPECT_THROW(lami(truth, fromRows({{"", "", "", ""}, {}, {}, {"?"}})), Error);
}

TEST(LongitudinalTest, SingleStepEqualsStepAmi) {
  const auto truth = fromRows({{"a"}, {"a"}, {"b"}, {"b"}, {"c"}});
  const auto found = fromRows({{"x"}, {"y"}, {"y"}, {"y"}, {"z"}});
  EXPECT_NEAR(lami(truth, found), avgStepScores(truth, found, Similarity::kAmi).mean, 1e-15);
  EXPECT_NEAR(lari(truth, found), avgStepScores(truth, found, Similarity::kAri).mean, 1e-15);
}

TEST(LongitudinalTest, InvariantUnderRelabeling) {
  Rng rng = makeRng({21});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<std::string>> a(12, std::vector<std::string>(5));
    std::vector<std::vector<std::string>> b = a;
    for (std::size_t n = 0; n < 12; ++n) {
      for (std::size_t t = 0; t < 5; ++t) {
        a[n][t] = std::string(1, static_cast<char>('a' + uniformIndex(rng, 4)));
        b[n][t] = uniformIndex(rng, 10) == 0 ? "?" : std::string(1, static_cast<char>('p' + uniformIndex(rng, 3)));
      }
    }
    const auto truth = fromRows(a);
    const auto found = fromRows(b);
    const double x = lami(truth, found);
    const double y = lari(truth, found);
    EXPECT_NEAR(lami(relabel(truth, "t"), found), x, 1e-12);
    EXPECT_NEAR(lami(truth, relabel(found, "f")), x, 1e-12);
    EXPECT_NEAR(lari(relabel(truth, "t"), found), y, 1e-12);
    EXPECT_NEAR(lari(truth, relabel(found, "f")), y, 1e-12);
  }
}

TEST(RankTest, DescendingWithMeanTies) {
  EXPECT_EQ(descendingRanks({0.9, 0.5}), (std::vector<double>{1, 2}));
  EXPECT_EQ(descendingRanks({0.5, 0.5}), (std::vector<double>{1.5, 1.5}));
  EXPECT_EQ(descendingRanks({0.1, 0.7, 0.7, 0.9}), (std::vector<double>{4, 2.5, 2.5, 1}));
}

TEST(RankTest, DominantMethodRanksFirst) {
  EvaluationReport good;
  good.method = "good";
  good.avgAMI.mean = good.avgARI.mean = good.avgQ.mean = 0.9;
  good.smoothness.smP = good.smoothness.smN = good.smoothness.smL = 0.9;
  good.lami = good.lari = 0.9;
  EvaluationReport bad = good;
  bad.method = "bad";
  bad.avgAMI.mean = bad.avgARI.mean = bad.avgQ.mean = 0.1;
  bad.smoothness.smP = bad.smoothness.smN = bad.smoothness.smL = 0.1;
  bad.lami = bad.lari = 0.1;
  const auto table = rankTable({good, bad});
  EXPECT_EQ(table.size(), 8u);
  for (const auto& [score, ranks] : table) EXPECT_EQ(ranks, (std::vector<double>{1, 2})) << score;
  bad.lami = 0.9;
  EXPECT_EQ(rankTable({good, bad}).at("lami"), (std::vector<double>{1.5, 1.5}));
  EXPECT_THROW(rankTable({good}), Error);
}

TEST(EvaluateTest, ReportFields) {
  DynamicGraph g;
  g.append(Snapshot::make(0, {0, 1, 2, 3}, {{0, 1}, {2, 3}}));
  g.append(Snapshot::make(1, {0, 1, 2, 3}, {{0, 1}, {2, 3}}));
  const auto truth = fromRows({{"a", "a"}, {"a", "a"}, {"b", "b"}, {"b", "b"}});
  const EvaluationReport r = evaluate(g, truth, truth, "self");
  EXPECT_EQ(r.method, "self");
  EXPECT_DOUBLE_EQ(r.avgAMI.mean, 1.0);
  EXPECT_DOUBLE_EQ(r.avgQ.mean, 0.5);
  EXPECT_DOUBLE_EQ(r.smoothness.smN, 1.0);
  EXPECT_EQ(r.smoothness.labelChanges, 0u);
  EXPECT_DOUBLE_EQ(r.smoothness.smP, 1.0);
  EXPECT_DOUBLE_EQ(r.smoothness.smPLiteral, 0.0);
  EXPECT_DOUBLE_EQ(r.lami, 1.0);
  const auto scores = rankedScores(r);
  ASSERT_EQ(scores.size(), 8u);
  EXPECT_EQ(scores.front().first, "avg_ami");
  EXPECT_EQ(scores.back().first, "lari");
}

}  // namespace
}  // namespace dynbench
