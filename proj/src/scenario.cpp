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

#include "dynbench/scenario.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

#include "dynbench/random.hpp"

namespace dynbench {

namespace {

constexpr std::array<std::string_view, 12> kEventNames = {
    "ASSIGN",     "INITIALIZE", "BIRTH",    "DEATH",          "MERGE",           "SPLIT",
    "THESEUS",    "RESURGENCE", "CONTINUE", "GROW_ITERATIVE", "SHRINK_ITERATIVE", "MIGRATE_ITERATIVE",
};

std::string declName(std::size_t index, EventKind kind) {
  return "event #" + std::to_string(index) + " (" + std::string(toString(kind)) + ")";
}

}  // namespace

std::string_view toString(EventKind kind) { return kEventNames.at(static_cast<std::size_t>(kind)); }

std::optional<EventKind> eventKindFromString(std::string_view name) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == name) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

Label freshLabel(CommunityId id) { return Label("@" + std::to_string(id.value)); }

std::size_t EventDecl::outputCount() const {
  switch (kind()) {
    case EventKind::kAssign:
      return std::get<AssignParams>(params).afterNodes.size();
    case EventKind::kInitialize:
      return std::get<InitializeParams>(params).sizes.size();
    case EventKind::kSplit:
      return std::get<SplitParams>(params).sizes.size();
    case EventKind::kDeath:
      return 0;
    case EventKind::kTheseus:
    case EventKind::kMigrateIterative:
      return 2;
    default:
      return 1;
  }
}

// ---------------------------------------------------------------------------
// ScenarioBuilder

std::size_t ScenarioBuilder::add(EventDecl decl) {
  events_.push_back(std::move(decl));
  return events_.size() - 1;
}

std::vector<CommunityRef> ScenarioBuilder::refs(std::size_t event) const {
  std::vector<CommunityRef> out;
  for (std::size_t i = 0; i < events_[event].outputCount(); ++i) out.push_back({event, i});
  return out;
}

std::vector<CommunityRef> ScenarioBuilder::initialize(std::vector<std::size_t> sizes,
                                                      std::vector<Label> labels) {
  return refs(add({InitializeParams{std::move(sizes), std::move(labels)}, {}, {}, 0}));
}

std::vector<CommunityRef> ScenarioBuilder::assign(std::vector<CommunityRef> before,
                                                  std::vector<NodeSet> afterNodes,
                                                  std::vector<Label> afterLabels, Timing timing) {
  for (auto& nodes : afterNodes) nodes = makeNodeSet(std::move(nodes));
  return refs(add({AssignParams{std::move(afterNodes), std::move(afterLabels)}, std::move(before),
                   std::move(timing.triggers), timing.delay}));
}

CommunityRef ScenarioBuilder::birth(std::size_t nbNodes, Label label, Timing timing) {
  return {add({BirthParams{nbNodes, std::move(label)}, {}, std::move(timing.triggers), timing.delay}), 0};
}

void ScenarioBuilder::death(CommunityRef c, Timing timing) {
  add({DeathParams{}, {c}, std::move(timing.triggers), timing.delay});
}

CommunityRef ScenarioBuilder::merge(std::vector<CommunityRef> coms, std::optional<Label> label,
                                    Timing timing) {
  return {add({MergeParams{std::move(label)}, std::move(coms), std::move(timing.triggers), timing.delay}),
          0};
}

std::vector<CommunityRef> ScenarioBuilder::split(CommunityRef c, std::vector<Label> labels,
                                                 std::vector<std::size_t> sizes, Timing timing) {
  return refs(add({SplitParams{std::move(labels), std::move(sizes)}, {c}, std::move(timing.triggers),
                   timing.delay}));
}

std::pair<CommunityRef, CommunityRef> ScenarioBuilder::theseus(CommunityRef c,
                                                               std::optional<std::size_t> nbNodes,
                                                               std::optional<Label> rebornLabel,
                                                               Timing timing) {
  const std::size_t e = add({TheseusParams{nbNodes, std::move(rebornLabel)}, {c},
                             std::move(timing.triggers), timing.delay});
  return {{e, 0}, {e, 1}};
}

CommunityRef ScenarioBuilder::resurgence(CommunityRef c, Step gap, Timing timing) {
  return {add({ResurgenceParams{gap}, {c}, std::move(timing.triggers), timing.delay}), 0};
}

CommunityRef ScenarioBuilder::continueFor(CommunityRef c, Step duration, Timing timing) {
  return {add({ContinueParams{duration}, {c}, std::move(timing.triggers), timing.delay}), 0};
}

CommunityRef ScenarioBuilder::growIterative(CommunityRef c, std::size_t nbNodes, Timing timing) {
  return {add({GrowIterativeParams{nbNodes}, {c}, std::move(timing.triggers), timing.delay}), 0};
}

CommunityRef ScenarioBuilder::shrinkIterative(CommunityRef c, std::size_t nbNodes, Timing timing) {
  return {add({ShrinkIterativeParams{nbNodes}, {c}, std::move(timing.triggers), timing.delay}), 0};
}

std::pair<CommunityRef, CommunityRef> ScenarioBuilder::migrateIterative(CommunityRef src, CommunityRef dst,
                                                                        std::size_t nbNodes, Timing timing) {
  const std::size_t e =
      add({MigrateIterativeParams{nbNodes}, {src, dst}, std::move(timing.triggers), timing.delay});
  return {{e, 0}, {e, 1}};
}

// ---------------------------------------------------------------------------
// ScheduleState

std::vector<Community> ScheduleState::retire(std::span<const CommunityId> ids) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!isActive(ids[i])) throw Error("community " + std::to_string(ids[i].value) + " is not active");
    for (std::size_t j = 0; j < i; ++j) {
      if (ids[j] == ids[i]) throw Error("community " + std::to_string(ids[i].value) + " listed twice");
    }
  }
  std::vector<Community> out;
  for (CommunityId id : ids) {
    auto it = active_.find(id);
    out.push_back(std::move(it->second));
    active_.erase(it);
  }
  return out;
}

std::vector<Community> ScheduleState::assign(std::span<const CommunityId> before,
                                             std::span<const NodeSet> afterNodes,
                                             std::span<const Label> afterLabels) {
  if (afterNodes.size() != afterLabels.size()) {
    throw Error("assign: " + std::to_string(afterNodes.size()) + " node sets but " +
                std::to_string(afterLabels.size()) + " labels");
  }
  for (CommunityId id : before) {
    if (!isActive(id)) throw Error("assign: community " + std::to_string(id.value) + " is not active");
  }
  // Validate against the state as it will be once `before` is retired.
  std::vector<NodeId> others;
  for (const auto& [id, c] : active_) {
    if (std::find(before.begin(), before.end(), id) != before.end()) continue;
    others.insert(others.end(), c.nodes.begin(), c.nodes.end());
  }
  const NodeSet taken = makeNodeSet(std::move(others));
  for (std::size_t i = 0; i < afterNodes.size(); ++i) {
    if (afterNodes[i].empty()) throw Error("assign: yielded community " + std::to_string(i) + " is empty");
    if (intersects(afterNodes[i], taken)) {
      throw Error("assign: yielded community " + std::to_string(i) + " overlaps an active community");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (intersects(afterNodes[i], afterNodes[j])) {
        throw Error("assign: yielded communities " + std::to_string(j) + " and " + std::to_string(i) +
                    " overlap");
      }
    }
  }
  retire(before);
  std::vector<Community> created;
  for (std::size_t i = 0; i < afterNodes.size(); ++i) {
    Community c{CommunityId{nextCommunity_++}, afterLabels[i], makeNodeSet(afterNodes[i])};
    for (NodeId n : c.nodes) noteNodeUsed(n);
    active_.emplace(c.id, c);
    created.push_back(std::move(c));
  }
  return created;
}

NodeId ScheduleState::newNode() { return nextNode_++; }

void ScheduleState::noteNodeUsed(NodeId node) {
  if (node >= nextNode_) nextNode_ = node + 1;
}

const Community& ScheduleState::active(CommunityId id) const {
  auto it = active_.find(id);
  if (it == active_.end()) throw Error("community " + std::to_string(id.value) + " is not active");
  return it->second;
}

NodeSet ScheduleState::activeNodes() const {
  std::vector<NodeId> all;
  for (const auto& [id, c] : active_) all.insert(all.end(), c.nodes.begin(), c.nodes.end());
  return makeNodeSet(std::move(all));
}

// ---------------------------------------------------------------------------
// Engine

namespace {

enum class PhaseKind { kTransition, kHold, kInstant };

struct Phase {
  PhaseKind kind = PhaseKind::kTransition;
  std::vector<std::size_t> beforeSlots;  // indices into Running::pool
  std::vector<NodeSet> after;
  std::vector<std::optional<Label>> labels;
  Step delay = 0;     // wait after the previous phase completed
  Step duration = 0;  // kHold only
};

struct Running {
  std::vector<Community> pool;  // inputs, then everything yielded so far
  std::vector<Phase> phases;
  std::vector<std::size_t> outputSlots;
  std::size_t phase = 0;
  Step phaseStart = 0;
  Step phaseTriggerReady = 0;
  Step phaseDelay = 0;
  std::optional<std::size_t> transition;
};

struct Task {
  Step time;
  int order;  // completions run before starts at the same step
  std::size_t decl;
  std::size_t phase;
  friend bool operator>(const Task& a, const Task& b) {
    return std::tie(a.time, a.order, a.decl, a.phase) > std::tie(b.time, b.order, b.decl, b.phase);
  }
};

class Engine {
 public:
  Engine(std::span<const EventDecl> events, std::uint64_t seed, const TransitionCost& cost)
      : events_(events), cost_(cost), rng_(makeRng({seed, 0x5ce7a110ULL})) {}

  ScenarioRun run();

 private:
  void validate() const;
  std::vector<CommunityRef> effectiveTriggers(std::size_t d) const;
  void maybeSchedule(std::size_t d);
  void startDecl(std::size_t d, Step now);
  void lower(std::size_t d, Running& r);
  void startPhase(std::size_t d, Step now);
  void completePhase(std::size_t d, Step now);
  NodeSet reservedByOthers(std::size_t d) const;
  NodeSet pendingNodes(const Running& r) const;
  void openSpan(const Community& c, Step from);
  void closeSpan(CommunityId id, Step to);
  std::vector<NodeSet> freshNodeSets(const std::vector<std::size_t>& sizes);
  NodeSet freshNodes(std::size_t n);
  NodeId pickRandom(const NodeSet& nodes);

  std::span<const EventDecl> events_;
  const TransitionCost& cost_;
  Rng rng_;

  ScheduleState state_;
  std::vector<std::vector<std::optional<Step>>> readyAt_;
  std::vector<std::vector<CommunityId>> yielded_;
  std::vector<std::vector<std::size_t>> dependents_;
  std::vector<bool> scheduled_;
  std::vector<bool> done_;
  std::map<std::size_t, Running> running_;
  std::map<std::size_t, NodeSet> reserved_;
  std::map<CommunityId, std::pair<Community, Step>> openSpans_;
  std::priority_queue<Task, std::vector<Task>, std::greater<>> queue_;

  EvolutionPlan plan_;
  std::vector<EventLogEntry> log_;
  Step lastTime_ = 0;
  bool anyEvent_ = false;
};

void Engine::validate() const {
  for (std::size_t d = 0; d < events_.size(); ++d) {
    const EventDecl& e = events_[d];
    const auto check = [&](const CommunityRef& ref, const char* what) {
      if (ref.event >= d) {
        throw Error(declName(d, e.kind()) + ": " + what + " refers to event #" + std::to_string(ref.event) +
                    " which is not earlier (cyclic or forward reference)");
      }
      if (ref.output >= events_[ref.event].outputCount()) {
        throw Error(declName(d, e.kind()) + ": " + what + " refers to output " + std::to_string(ref.output) +
                    " never yielded by event #" + std::to_string(ref.event));
      }
    };
    for (const auto& ref : e.inputs) check(ref, "input");
    for (const auto& ref : e.triggers) check(ref, "trigger");
    for (std::size_t i = 0; i < e.inputs.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (e.inputs[i] == e.inputs[j]) throw Error(declName(d, e.kind()) + ": the same community is used twice");
      }
    }
    std::size_t expected = 1;
    switch (e.kind()) {
      case EventKind::kAssign:
        expected = e.inputs.size();
        break;
      case EventKind::kInitialize:
      case EventKind::kBirth:
        expected = 0;
        break;
      case EventKind::kMerge:
        if (e.inputs.size() < 2) throw Error(declName(d, e.kind()) + ": needs at least 2 communities");
        expected = e.inputs.size();
        break;
      case EventKind::kMigrateIterative:
        expected = 2;
        break;
      default:
        break;
    }
    if (e.inputs.size() != expected) {
      throw Error(declName(d, e.kind()) + ": expects " + std::to_string(expected) + " input communities, got " +
                  std::to_string(e.inputs.size()));
    }
  }
}

std::vector<CommunityRef> Engine::effectiveTriggers(std::size_t d) const {
  std::vector<CommunityRef> all = events_[d].inputs;
  all.insert(all.end(), events_[d].triggers.begin(), events_[d].triggers.end());
  return all;
}

void Engine::maybeSchedule(std::size_t d) {
  if (scheduled_[d]) return;
  Step ready = 0;
  for (const auto& ref : effectiveTriggers(d)) {
    const auto& r = readyAt_[ref.event][ref.output];
    if (!r) return;
    ready = std::max(ready, *r);
  }
  scheduled_[d] = true;
  Running& run = running_[d];
  run.phaseTriggerReady = ready;
  run.phaseDelay = events_[d].delay;
  queue_.push({ready + events_[d].delay, 1, d, 0});
}

NodeSet Engine::freshNodes(std::size_t n) {
  NodeSet out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(state_.newNode());
  return out;
}

std::vector<NodeSet> Engine::freshNodeSets(const std::vector<std::size_t>& sizes) {
  std::vector<NodeSet> out;
  for (std::size_t s : sizes) out.push_back(freshNodes(s));
  return out;
}

NodeId Engine::pickRandom(const NodeSet& nodes) {
  return nodes[uniformIndex(rng_, nodes.size())];
}

void Engine::lower(std::size_t d, Running& r) {
  const EventDecl& e = events_[d];
  const std::string name = declName(d, e.kind());
  const auto single = [&](std::vector<std::size_t> before, std::vector<NodeSet> after,
                          std::vector<std::optional<Label>> labels) {
    Phase p;
    p.beforeSlots = std::move(before);
    p.after = std::move(after);
    p.labels = std::move(labels);
    return p;
  };
  // Slot bookkeeping: every phase appends its yielded communities to the pool.
  std::size_t poolSize = r.pool.size();
  const auto push = [&](Phase p) {
    const std::size_t first = poolSize;
    poolSize += p.after.size();
    r.phases.push_back(std::move(p));
    return first;
  };
  std::vector<std::size_t> inputSlots(r.pool.size());
  std::iota(inputSlots.begin(), inputSlots.end(), std::size_t{0});

  switch (e.kind()) {
    case EventKind::kInitialize: {
      const auto& p = std::get<InitializeParams>(e.params);
      if (p.sizes.size() != p.labels.size()) throw Error(name + ": sizes and labels differ in length");
      if (std::find(p.sizes.begin(), p.sizes.end(), std::size_t{0}) != p.sizes.end()) {
        throw Error(name + ": community sizes must be positive");
      }
      if (r.phaseTriggerReady + r.phaseDelay != 0) throw Error(name + ": must take place at step 0");
      Phase ph = single({}, freshNodeSets(p.sizes), {p.labels.begin(), p.labels.end()});
      ph.kind = PhaseKind::kInstant;
      const std::size_t first = push(std::move(ph));
      for (std::size_t i = 0; i < p.sizes.size(); ++i) r.outputSlots.push_back(first + i);
      break;
    }
    case EventKind::kAssign: {
      const auto& p = std::get<AssignParams>(e.params);
      if (p.afterNodes.size() != p.afterLabels.size()) {
        throw Error(name + ": node sets and labels differ in length");
      }
      std::vector<NodeSet> after;
      for (const auto& nodes : p.afterNodes) after.push_back(makeNodeSet(nodes));
      const std::size_t first = push(single(inputSlots, std::move(after), {p.afterLabels.begin(), p.afterLabels.end()}));
      for (std::size_t i = 0; i < p.afterNodes.size(); ++i) r.outputSlots.push_back(first + i);
      break;
    }
    case EventKind::kBirth: {
      const auto& p = std::get<BirthParams>(e.params);
      if (p.nbNodes == 0) throw Error(name + ": number of nodes must be positive");
      r.outputSlots.push_back(push(single({}, {freshNodes(p.nbNodes)}, {p.label})));
      break;
    }
    case EventKind::kDeath:
      push(single({0}, {}, {}));
      break;
    case EventKind::kMerge: {
      const auto& p = std::get<MergeParams>(e.params);
      NodeSet all;
      for (const auto& c : r.pool) all = setUnion(all, c.nodes);
      r.outputSlots.push_back(push(single(inputSlots, {all}, {p.label})));
      break;
    }
    case EventKind::kSplit: {
      const auto& p = std::get<SplitParams>(e.params);
      const NodeSet& nodes = r.pool[0].nodes;
      if (p.labels.size() != p.sizes.size()) throw Error(name + ": labels and sizes differ in length");
      if (p.sizes.empty()) throw Error(name + ": no resulting community");
      if (std::find(p.sizes.begin(), p.sizes.end(), std::size_t{0}) != p.sizes.end()) {
        throw Error(name + ": resulting sizes must be positive");
      }
      const std::size_t total = std::accumulate(p.sizes.begin(), p.sizes.end(), std::size_t{0});
      if (total != nodes.size()) {
        throw Error(name + ": sizes sum to " + std::to_string(total) + " but the community has " +
                    std::to_string(nodes.size()) + " nodes");
      }
      std::vector<NodeId> pool(nodes.begin(), nodes.end());
      shuffle(pool, rng_);
      std::vector<NodeSet> after;
      std::size_t offset = 0;
      for (std::size_t s : p.sizes) {
        after.push_back(makeNodeSet({pool.begin() + static_cast<std::ptrdiff_t>(offset),
                                     pool.begin() + static_cast<std::ptrdiff_t>(offset + s)}));
        offset += s;
      }
      const std::size_t first = push(single({0}, std::move(after), {p.labels.begin(), p.labels.end()}));
      for (std::size_t i = 0; i < p.sizes.size(); ++i) r.outputSlots.push_back(first + i);
      break;
    }
    case EventKind::kTheseus: {
      const auto& p = std::get<TheseusParams>(e.params);
      const Community& com = r.pool[0];
      const std::size_t k = p.nbNodes.value_or(com.nodes.size());
      if (k == 0) throw Error(name + ": number of nodes to replace must be positive");
      if (k > com.nodes.size()) {
        throw Error(name + ": cannot replace " + std::to_string(k) + " nodes of a community of " +
                    std::to_string(com.nodes.size()));
      }
      NodeSet current = com.nodes;
      NodeSet originals = com.nodes;
      NodeSet removed;
      std::size_t slot = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const NodeId gone = pickRandom(originals);
        originals = setDifference(originals, {gone});
        removed = setUnion(removed, {gone});
        current = setUnion(setDifference(current, {gone}), {state_.newNode()});
        slot = push(single({slot}, {current}, {com.label}));
      }
      const std::size_t reborn = push(single({}, {removed}, {p.rebornLabel}));
      r.outputSlots = {slot, reborn};
      break;
    }
    case EventKind::kResurgence: {
      const auto& p = std::get<ResurgenceParams>(e.params);
      const Community& com = r.pool[0];
      push(single({0}, {}, {}));
      Phase back = single({}, {com.nodes}, {com.label});
      back.delay = p.gap;
      r.outputSlots.push_back(push(std::move(back)));
      break;
    }
    case EventKind::kContinue: {
      const auto& p = std::get<ContinueParams>(e.params);
      Phase hold = single({0}, {r.pool[0].nodes}, {r.pool[0].label});
      hold.kind = PhaseKind::kHold;
      hold.duration = p.duration;
      r.outputSlots.push_back(push(std::move(hold)));
      break;
    }
    case EventKind::kGrowIterative: {
      const auto& p = std::get<GrowIterativeParams>(e.params);
      if (p.nbNodes == 0) throw Error(name + ": number of nodes must be positive");
      NodeSet current = r.pool[0].nodes;
      std::size_t slot = 0;
      for (std::size_t i = 0; i < p.nbNodes; ++i) {
        current = setUnion(current, {state_.newNode()});
        slot = push(single({slot}, {current}, {r.pool[0].label}));
      }
      r.outputSlots.push_back(slot);
      break;
    }
    case EventKind::kShrinkIterative: {
      const auto& p = std::get<ShrinkIterativeParams>(e.params);
      NodeSet current = r.pool[0].nodes;
      if (p.nbNodes == 0) throw Error(name + ": number of nodes must be positive");
      if (p.nbNodes >= current.size()) {
        throw Error(name + ": removing " + std::to_string(p.nbNodes) + " nodes exhausts a community of " +
                    std::to_string(current.size()));
      }
      std::size_t slot = 0;
      for (std::size_t i = 0; i < p.nbNodes; ++i) {
        current = setDifference(current, {pickRandom(current)});
        slot = push(single({slot}, {current}, {r.pool[0].label}));
      }
      r.outputSlots.push_back(slot);
      break;
    }
    case EventKind::kMigrateIterative: {
      const auto& p = std::get<MigrateIterativeParams>(e.params);
      NodeSet src = r.pool[0].nodes;
      NodeSet dst = r.pool[1].nodes;
      if (p.nbNodes == 0) throw Error(name + ": number of nodes must be positive");
      if (p.nbNodes >= src.size()) {
        throw Error(name + ": migrating " + std::to_string(p.nbNodes) + " nodes exhausts a community of " +
                    std::to_string(src.size()));
      }
      std::size_t srcSlot = 0;
      std::size_t dstSlot = 1;
      for (std::size_t i = 0; i < p.nbNodes; ++i) {
        const NodeId moving = pickRandom(src);
        src = setDifference(src, {moving});
        dst = setUnion(dst, {moving});
        srcSlot = push(single({srcSlot, dstSlot}, {src, dst}, {r.pool[0].label, r.pool[1].label}));
        dstSlot = srcSlot + 1;
      }
      r.outputSlots = {srcSlot, dstSlot};
      break;
    }
  }
}

NodeSet Engine::pendingNodes(const Running& r) const {
  NodeSet nodes;
  for (std::size_t p = r.phase; p < r.phases.size(); ++p) {
    for (const auto& s : r.phases[p].after) nodes = setUnion(nodes, s);
  }
  return nodes;
}

NodeSet Engine::reservedByOthers(std::size_t d) const {
  NodeSet nodes;
  for (const auto& [other, set] : reserved_) {
    if (other != d) nodes = setUnion(nodes, set);
  }
  return nodes;
}

void Engine::openSpan(const Community& c, Step from) { openSpans_[c.id] = {c, from}; }

void Engine::closeSpan(CommunityId id, Step to) {
  auto it = openSpans_.find(id);
  if (it == openSpans_.end()) return;
  auto& [c, from] = it->second;
  if (to > from) plan_.communities.push_back({c.id, c.label, c.nodes, from, to});
  openSpans_.erase(it);
}

void Engine::startDecl(std::size_t d, Step now) {
  Running& r = running_[d];
  for (const auto& ref : events_[d].inputs) {
    const CommunityId id = yielded_[ref.event][ref.output];
    if (!state_.isActive(id)) {
      throw Error(declName(d, events_[d].kind()) + ": input community " + std::to_string(id.value) +
                  " was already consumed by another event");
    }
    r.pool.push_back(state_.active(id));
  }
  lower(d, r);
  startPhase(d, now);
}

void Engine::startPhase(std::size_t d, Step now) {
  Running& r = running_[d];
  const Phase& ph = r.phases[r.phase];
  const std::string name = declName(d, events_[d].kind());
  r.phaseStart = now;
  anyEvent_ = true;

  std::vector<CommunityId> beforeIds;
  std::vector<NodeSet> beforeNodes;
  for (std::size_t slot : ph.beforeSlots) {
    beforeIds.push_back(r.pool[slot].id);
    beforeNodes.push_back(r.pool[slot].nodes);
  }
  // Yielded node sets must not collide with communities outside this phase or
  // with nodes another running event still needs.
  NodeSet blocked = reservedByOthers(d);
  for (const auto& [id, c] : state_.activeCommunities()) {
    if (std::find(beforeIds.begin(), beforeIds.end(), id) == beforeIds.end()) blocked = setUnion(blocked, c.nodes);
  }
  for (const auto& s : ph.after) {
    if (s.empty()) throw Error(name + ": yields an empty community");
    if (intersects(s, blocked)) throw Error(name + ": yielded nodes overlap a community not involved in the event");
    for (NodeId n : s) state_.noteNodeUsed(n);
  }
  reserved_[d] = setUnion(pendingNodes(r), [&] {
    NodeSet all;
    for (const auto& s : beforeNodes) all = setUnion(all, s);
    return all;
  }());

  Step end = now;
  switch (ph.kind) {
    case PhaseKind::kInstant:
      break;
    case PhaseKind::kHold:
      if (!state_.isActive(beforeIds.at(0))) throw Error(name + ": input community is not active");
      end = now + ph.duration;
      break;
    case PhaseKind::kTransition: {
      state_.retire(beforeIds);
      for (CommunityId id : beforeIds) closeSpan(id, now);
      const std::size_t steps = cost_.steps(beforeNodes, ph.after);
      if (steps > std::numeric_limits<Step>::max() - now) throw Error(name + ": transition too long");
      end = now + static_cast<Step>(steps);
      if (end > now) {
        r.transition = plan_.transitions.size();
        plan_.transitions.push_back({0, beforeNodes, ph.after, now, end});
      } else {
        r.transition.reset();
      }
      break;
    }
  }
  queue_.push({end, 0, d, r.phase});
}

void Engine::completePhase(std::size_t d, Step now) {
  Running& r = running_[d];
  const Phase& ph = r.phases[r.phase];
  lastTime_ = std::max(lastTime_, now);

  EventLogEntry entry;
  entry.kind = events_[d].kind();
  entry.decl = d;
  entry.phase = r.phase;
  entry.triggerReady = r.phaseTriggerReady;
  entry.delay = r.phaseDelay;
  entry.start = r.phaseStart;
  entry.end = now;
  std::vector<CommunityId> beforeIds;
  for (std::size_t slot : ph.beforeSlots) beforeIds.push_back(r.pool[slot].id);
  entry.before = beforeIds;

  std::vector<Label> labels;
  CommunityId next = state_.peekNextCommunityId();
  for (const auto& l : ph.labels) {
    labels.push_back(l ? *l : freshLabel(next));
    ++next.value;
  }
  std::vector<Community> created;
  if (ph.kind == PhaseKind::kHold) {
    created = state_.assign(beforeIds, ph.after, labels);
    closeSpan(beforeIds.at(0), now);
  } else {
    created = state_.assign({}, ph.after, labels);
  }
  for (const auto& c : created) {
    entry.after.push_back(c.id);
    openSpan(c, now);
    r.pool.push_back(c);
  }
  if (r.transition) {
    plan_.transitions[*r.transition].logEntry = log_.size();
    r.transition.reset();
  }
  log_.push_back(std::move(entry));

  // Publish the declaration outputs this phase produced.
  const std::size_t poolEnd = r.pool.size();
  for (std::size_t i = 0; i < r.outputSlots.size(); ++i) {
    const std::size_t slot = r.outputSlots[i];
    if (slot < poolEnd && slot >= poolEnd - created.size()) {
      yielded_[d][i] = r.pool[slot].id;
      readyAt_[d][i] = now;
    }
  }
  for (std::size_t dep : dependents_[d]) maybeSchedule(dep);

  ++r.phase;
  if (r.phase < r.phases.size()) {
    reserved_[d] = pendingNodes(r);
    r.phaseTriggerReady = now;
    r.phaseDelay = r.phases[r.phase].delay;
    queue_.push({now + r.phases[r.phase].delay, 1, d, r.phase});
  } else {
    reserved_.erase(d);
    done_[d] = true;
    running_.erase(d);
  }
}

ScenarioRun Engine::run() {
  validate();
  const std::size_t n = events_.size();
  readyAt_.resize(n);
  yielded_.resize(n);
  dependents_.resize(n);
  scheduled_.assign(n, false);
  done_.assign(n, false);
  for (std::size_t d = 0; d < n; ++d) {
    readyAt_[d].resize(events_[d].outputCount());
    yielded_[d].resize(events_[d].outputCount());
    for (const auto& ref : effectiveTriggers(d)) dependents_[ref.event].push_back(d);
  }
  for (auto& deps : dependents_) deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
  for (std::size_t d = 0; d < n; ++d) maybeSchedule(d);

  while (!queue_.empty()) {
    const Task task = queue_.top();
    queue_.pop();
    if (task.order == 0) {
      completePhase(task.decl, task.time);
    } else if (task.phase == 0) {
      startDecl(task.decl, task.time);
    } else {
      startPhase(task.decl, task.time);
    }
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (!done_[d]) throw Error(declName(d, events_[d].kind()) + " never started: a trigger is never ready");
  }

  plan_.numSteps = anyEvent_ ? lastTime_ + 1 : 0;
  for (auto it = openSpans_.begin(); it != openSpans_.end();) {
    const auto& [c, from] = it->second;
    if (plan_.numSteps > from) plan_.communities.push_back({c.id, c.label, c.nodes, from, plan_.numSteps});
    it = openSpans_.erase(it);
  }
  std::sort(plan_.communities.begin(), plan_.communities.end(),
            [](const CommunitySpan& a, const CommunitySpan& b) { return std::tie(a.from, a.id) < std::tie(b.from, b.id); });

  GroundTruth truth;
  truth.partition = LongitudinalPartition(plan_.numSteps);
  for (const auto& span : plan_.communities) {
    for (Step t = span.from; t < span.to; ++t) {
      for (NodeId node : span.nodes) truth.partition.set(node, t, span.label);
    }
  }
  for (const auto& tr : plan_.transitions) {
    for (Step t = tr.start; t < std::min(tr.end, plan_.numSteps); ++t) {
      for (const auto& s : tr.before) {
        for (NodeId node : s) truth.partition.set(node, t, std::nullopt);
      }
      for (const auto& s : tr.after) {
        for (NodeId node : s) truth.partition.set(node, t, std::nullopt);
      }
    }
  }
  truth.eventLog = std::move(log_);
  return {std::move(plan_), std::move(truth)};
}

}  // namespace

ScenarioRun runScenario(std::span<const EventDecl> events, std::uint64_t seed, const TransitionCost& cost) {
  Engine engine(events, seed, cost);
  return engine.run();
}

}  // namespace dynbench
