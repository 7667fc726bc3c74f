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

// Community-evolution scenarios: declarations, the schedule state they act
// on, and the engine that executes them into a step-by-step plan plus ground
// truth.
//
// Every event is lowered to one or more phases. A phase retires its input
// communities when it starts, keeps their nodes in an "evolving" state for as
// many steps as the transition cost model prescribes, and activates its output
// communities when it completes. Nodes of evolving communities carry no
// ground-truth label during that window.

#ifndef DYNBENCH_SCENARIO_HPP_
#define DYNBENCH_SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dynbench/core.hpp"

namespace dynbench {

enum class EventKind {
  kAssign,
  kInitialize,
  kBirth,
  kDeath,
  kMerge,
  kSplit,
  kTheseus,
  kResurgence,
  kContinue,
  kGrowIterative,
  kShrinkIterative,
  kMigrateIterative,
};

std::string_view toString(EventKind kind);
std::optional<EventKind> eventKindFromString(std::string_view name);

// Handle on the `output`-th community yielded by declaration `event`.
struct CommunityRef {
  std::size_t event = 0;
  std::size_t output = 0;
  friend auto operator<=>(const CommunityRef&, const CommunityRef&) = default;
};

struct AssignParams {
  std::vector<NodeSet> afterNodes;
  std::vector<Label> afterLabels;
};
struct InitializeParams {
  std::vector<std::size_t> sizes;
  std::vector<Label> labels;
};
struct BirthParams {
  std::size_t nbNodes = 0;
  Label label;
};
struct DeathParams {};
struct MergeParams {
  std::optional<Label> label;  // fresh label when absent
};
struct SplitParams {
  std::vector<Label> labels;
  std::vector<std::size_t> sizes;
};
struct TheseusParams {
  std::optional<std::size_t> nbNodes;  // whole community when absent
  std::optional<Label> rebornLabel;    // fresh label when absent
};
struct ResurgenceParams {
  Step gap = 10;  // steps during which the nodes are absent
};
struct ContinueParams {
  Step duration = 0;
};
struct GrowIterativeParams {
  std::size_t nbNodes = 0;
};
struct ShrinkIterativeParams {
  std::size_t nbNodes = 0;
};
struct MigrateIterativeParams {
  std::size_t nbNodes = 0;
};

// Alternative order matches EventKind.
using EventParams =
    std::variant<AssignParams, InitializeParams, BirthParams, DeathParams, MergeParams, SplitParams,
                 TheseusParams, ResurgenceParams, ContinueParams, GrowIterativeParams,
                 ShrinkIterativeParams, MigrateIterativeParams>;

struct EventDecl {
  EventParams params;
  std::vector<CommunityRef> inputs;
  // Extra readiness conditions. Inputs are always implicit triggers.
  std::vector<CommunityRef> triggers;
  Step delay = 0;

  EventKind kind() const { return static_cast<EventKind>(params.index()); }
  // Number of communities the event yields.
  std::size_t outputCount() const;
};

struct Timing {
  Step delay = 0;
  std::vector<CommunityRef> triggers;
};

// Programmatic scenario construction, one method per event kind. Each call
// appends a declaration and returns handles on the communities it yields.
class ScenarioBuilder {
 public:
  std::vector<CommunityRef> initialize(std::vector<std::size_t> sizes, std::vector<Label> labels);
  std::vector<CommunityRef> assign(std::vector<CommunityRef> before, std::vector<NodeSet> afterNodes,
                                   std::vector<Label> afterLabels, Timing timing = {});
  CommunityRef birth(std::size_t nbNodes, Label label, Timing timing = {});
  void death(CommunityRef c, Timing timing = {});
  CommunityRef merge(std::vector<CommunityRef> coms, std::optional<Label> label, Timing timing = {});
  std::vector<CommunityRef> split(CommunityRef c, std::vector<Label> labels,
                                  std::vector<std::size_t> sizes, Timing timing = {});
  std::pair<CommunityRef, CommunityRef> theseus(CommunityRef c,
                                                std::optional<std::size_t> nbNodes = std::nullopt,
                                                std::optional<Label> rebornLabel = std::nullopt,
                                                Timing timing = {});
  CommunityRef resurgence(CommunityRef c, Step gap, Timing timing = {});
  CommunityRef continueFor(CommunityRef c, Step duration, Timing timing = {});
  CommunityRef growIterative(CommunityRef c, std::size_t nbNodes, Timing timing = {});
  CommunityRef shrinkIterative(CommunityRef c, std::size_t nbNodes, Timing timing = {});
  std::pair<CommunityRef, CommunityRef> migrateIterative(CommunityRef src, CommunityRef dst,
                                                         std::size_t nbNodes, Timing timing = {});

  // Appends a raw declaration and returns its index.
  std::size_t add(EventDecl decl);
  const std::vector<EventDecl>& events() const { return events_; }

 private:
  std::vector<CommunityRef> refs(std::size_t event) const;
  std::vector<EventDecl> events_;
};

// The set of currently active communities plus the id and node allocators.
class ScheduleState {
 public:
  // Atomic assignment: retires `before`, then activates one fresh community per
  // (nodes, label) pair. Throws on length mismatch, inactive input, empty or
  // overlapping output node sets.
  std::vector<Community> assign(std::span<const CommunityId> before,
                                std::span<const NodeSet> afterNodes,
                                std::span<const Label> afterLabels);
  // Removes communities from the active set without yielding anything.
  std::vector<Community> retire(std::span<const CommunityId> ids);

  NodeId newNode();
  // Keeps newNode() fresh after explicit node ids have been used.
  void noteNodeUsed(NodeId node);
  // Id the next yielded community will receive.
  CommunityId peekNextCommunityId() const { return CommunityId{nextCommunity_}; }

  bool isActive(CommunityId id) const { return active_.count(id) != 0; }
  const Community& active(CommunityId id) const;
  const std::map<CommunityId, Community>& activeCommunities() const { return active_; }
  // Union of the node sets of all active communities.
  NodeSet activeNodes() const;

 private:
  std::map<CommunityId, Community> active_;
  std::uint64_t nextCommunity_ = 0;
  NodeId nextNode_ = 0;
};

// Number of steps a transition between two community layouts takes.
class TransitionCost {
 public:
  virtual ~TransitionCost() = default;
  virtual std::size_t steps(std::span<const NodeSet> before, std::span<const NodeSet> after) const = 0;
};

// Every transition takes the same number of steps. Handy in tests.
class ConstantTransitionCost final : public TransitionCost {
 public:
  explicit ConstantTransitionCost(std::size_t steps) : steps_(steps) {}
  std::size_t steps(std::span<const NodeSet>, std::span<const NodeSet>) const override { return steps_; }

 private:
  std::size_t steps_;
};

// A community that is stable (active, not evolving) during [from, to).
struct CommunitySpan {
  CommunityId id;
  Label label;
  NodeSet nodes;
  Step from = 0;
  Step to = 0;
};

// Progressive change from the `before` layout to the `after` layout over
// [start, end); one internal edge modification per step.
struct TransitionSpan {
  std::size_t logEntry = 0;
  std::vector<NodeSet> before;
  std::vector<NodeSet> after;
  Step start = 0;
  Step end = 0;
};

// Per-step target community structure consumed by the edge generator.
struct EvolutionPlan {
  Step numSteps = 0;
  std::vector<CommunitySpan> communities;
  std::vector<TransitionSpan> transitions;
};

struct EventLogEntry {
  EventKind kind = EventKind::kAssign;
  std::size_t decl = 0;    // index of the originating declaration
  std::size_t phase = 0;   // phase within that declaration
  Step triggerReady = 0;   // when all triggers of this phase were ready
  Step delay = 0;
  Step start = 0;
  Step end = 0;
  std::vector<CommunityId> before;
  std::vector<CommunityId> after;
};

struct GroundTruth {
  LongitudinalPartition partition;
  std::vector<EventLogEntry> eventLog;
};

struct ScenarioRun {
  EvolutionPlan plan;
  GroundTruth truth;
};

// Executes the declarations. Throws on forward or dangling references,
// communities consumed twice, and any precondition violated by an event.
ScenarioRun runScenario(std::span<const EventDecl> events, std::uint64_t seed, const TransitionCost& cost);

// Label given to yielded communities when the scenario does not name one.
Label freshLabel(CommunityId id);

}  // namespace dynbench

#endif  // DYNBENCH_SCENARIO_HPP_
