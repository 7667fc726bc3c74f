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

#include <gtest/gtest.h>

#include "helpers.hpp"

namespace dynbench {
namespace {

using testing::snapshotOf;

TEST(EdgeTest, MakeEdgeOrdersEndpoints) {
  EXPECT_EQ(makeEdge(5, 2), (Edge{2, 5}));
  EXPECT_EQ(makeEdge(2, 5), (Edge{2, 5}));
  EXPECT_THROW(makeEdge(3, 3), Error);
}

TEST(LabelTest, RejectsEmpty) {
  EXPECT_THROW(Label(""), Error);
  EXPECT_EQ(Label("A").value, "A");
}

TEST(NodeSetTest, SetOperations) {
  const NodeSet a = makeNodeSet({4, 1, 3, 1});
  EXPECT_EQ(a, (NodeSet{1, 3, 4}));
  const NodeSet b{3, 5};
  EXPECT_EQ(setUnion(a, b), (NodeSet{1, 3, 4, 5}));
  EXPECT_EQ(setDifference(a, b), (NodeSet{1, 4}));
  EXPECT_TRUE(intersects(a, b));
  EXPECT_FALSE(intersects(a, NodeSet{0, 2}));
}

TEST(SnapshotTest, MakeSortsAndValidates) {
  const Snapshot s = snapshotOf(0, {0, 1, 2}, {{2, 1}, {0, 1}});
  EXPECT_EQ(s.edges, (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(s.hasEdge({1, 2}));
  EXPECT_FALSE(s.hasEdge({0, 2}));
  EXPECT_THROW(Snapshot::make(0, {0, 1}, {{1, 0}}), Error);
  EXPECT_THROW(Snapshot::make(0, {0, 1}, {{0, 1}, {0, 1}}), Error);
  EXPECT_THROW(Snapshot::make(0, {0, 1}, {{0, 2}}), Error);
}

TEST(DynamicGraphTest, AppendRequiresConsecutiveSteps) {
  DynamicGraph g;
  g.append(snapshotOf(0, {0, 1}, {{0, 1}}));
  EXPECT_THROW(g.append(snapshotOf(2, {0}, {})), Error);
  g.append(snapshotOf(1, {1, 2, 3}, {}));
  EXPECT_EQ(g.numSteps(), 2u);
  EXPECT_EQ(g.maxNodesPerStep(), 3u);
  EXPECT_EQ(g.allNodes(), (NodeSet{0, 1, 2, 3}));
}

TEST(LongitudinalPartitionTest, DistinguishesAbsentFromUndefined) {
  LongitudinalPartition p(2);
  p.set(0, 0, Label("A"));
  p.set(1, 0, std::nullopt);
  ASSERT_NE(p.find(0, 0), nullptr);
  EXPECT_EQ(p.find(0, 0)->value().value, "A");
  ASSERT_NE(p.find(1, 0), nullptr);
  EXPECT_FALSE(p.find(1, 0)->has_value());
  EXPECT_EQ(p.find(2, 0), nullptr);
  EXPECT_EQ(p.find(0, 1), nullptr);
  EXPECT_EQ(p.definedCount(), 1u);
  EXPECT_EQ(p.nodes(), (NodeSet{0, 1}));
  const LongitudinalPartition d = p.definedOnly();
  EXPECT_EQ(d.find(1, 0), nullptr);
  EXPECT_EQ(d.definedCount(), 1u);
}

TEST(LongitudinalPartitionTest, RestrictKeepsCommonDefinedKeys) {
  LongitudinalPartition p(2);
  LongitudinalPartition q(2);
  p.set(0, 0, Label("A"));
  p.set(1, 0, Label("A"));
  p.set(2, 1, std::nullopt);
  q.set(0, 0, Label("X"));
  q.set(2, 1, Label("Y"));
  q.set(3, 1, Label("Y"));
  auto [rp, rq] = restrict(p, q);
  EXPECT_EQ(rp.definedCount(), 1u);
  EXPECT_EQ(rq.definedCount(), 1u);
  EXPECT_EQ(rq.find(0, 0)->value().value, "X");
  EXPECT_THROW(restrict(LongitudinalPartition(1), q), Error);
}

}  // namespace
}  // namespace dynbench
