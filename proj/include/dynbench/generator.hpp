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

// Edge generation for an evolution plan.
//
// Every node pair carries a fixed affinity score. A block of n nodes receives
// the internalEdgeCount(n, alpha) pairs of highest affinity; a pair of blocks
// receives the round(p_ext * |A| * |B|) cross pairs of highest affinity. A
// community changing shape walks from its old edge set to its new one, one
// edge modification per step. Noise rewires a fraction of the edges of each
// emitted snapshot without touching the underlying state.

#ifndef DYNBENCH_GENERATOR_HPP_
#define DYNBENCH_GENERATOR_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dynbench/core.hpp"
#include "dynbench/random.hpp"
#include "dynbench/scenario.hpp"

namespace dynbench {

struct GeneratorParams {
  double alpha = 0.9;  // density exponent, in (0, 1]
  double beta = 0.05;  // identifiability, in [0, 1]
  double betaR = 0.0;  // noise fraction, in [0, 1]
  std::uint64_t seed = 0;

  // alpha = 1 - mu, beta = mu.
  static GeneratorParams fromMu(double mu, double betaR, std::uint64_t seed);
  // Throws Error when a field is out of range.
  void validate() const;
};

// Symmetric per-pair score in [0, 1), computed from a keyed hash.
class AffinityOracle {
 public:
  explicit AffinityOracle(std::uint64_t seed) : seed_(seed) {}
  double operator()(NodeId u, NodeId v) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

double meanDegree(std::size_t nc, double alpha);
double internalDensity(std::size_t nc, double alpha);
std::size_t internalEdgeCount(std::size_t nc, double alpha);
double externalDensity(std::size_t totalNodes, double alpha, double beta);

// The q pairs of highest affinity, sorted by edge. With `b` empty the
// candidates are the pairs inside `a`; otherwise the pairs across a and b,
// which must be disjoint.
std::vector<Edge> blockEdges(const AffinityOracle& omega, const NodeSet& a, const NodeSet& b, std::size_t q);
// Fraction form: q = round(fraction * candidate pairs).
std::vector<Edge> blockEdgesByFraction(const AffinityOracle& omega, const NodeSet& a, const NodeSet& b,
                                       double fraction);
// Edges of a stable community: q = internalEdgeCount(|nodes|, alpha).
std::vector<Edge> intraBlockEdges(const AffinityOracle& omega, const NodeSet& nodes, double alpha);
std::vector<Edge> interBlockEdges(const AffinityOracle& omega, const NodeSet& a, const NodeSet& b,
                                  double externalFraction);

struct EdgeModification {
  bool add = true;
  Edge edge;
  friend bool operator==(const EdgeModification&, const EdgeModification&) = default;
};

struct TransitionPlan {
  std::vector<EdgeModification> modifications;
  std::size_t size() const { return modifications.size(); }
};

// Additions (after \ before) by decreasing affinity, removals (before \ after)
// by increasing affinity, interleaved so that both queues progress at the same
// relative rate. Inputs must be sorted and unique.
TransitionPlan planTransition(const AffinityOracle& omega, std::span<const Edge> before,
                              std::span<const Edge> after);

// Union of the intra-block edges of each set.
std::vector<Edge> layoutEdges(const AffinityOracle& omega, std::span<const NodeSet> blocks, double alpha);

struct NoiseResult {
  Snapshot snapshot;
  std::size_t rewired = 0;
  std::size_t skipped = 0;  // removals left without a replacement
};

// Removes floor(betaR * |E|) uniformly chosen edges and adds as many uniformly
// chosen pairs that were absent from the input.
NoiseResult applyNoise(const Snapshot& snapshot, double betaR, Rng& rng);

// Transition length model matching generate(): a transition costs one step per
// intra-block edge modification.
class DsabmTransitionCost final : public TransitionCost {
 public:
  explicit DsabmTransitionCost(const GeneratorParams& params) : params_(params), omega_(params.seed) {}
  std::size_t steps(std::span<const NodeSet> before, std::span<const NodeSet> after) const override;

 private:
  GeneratorParams params_;
  AffinityOracle omega_;
};

struct GenerateOptions {
  // Emit only the first steps. Later steps are not computed.
  std::optional<Step> stepLimit;
};

// Per-step view of the backbone, before external edges and noise.
struct GenerationTrace {
  std::vector<std::vector<Edge>> internalEdges;
  std::vector<std::size_t> activeTransitions;
  std::size_t noiseSkipped = 0;
};

// Throws Error when a transition's length differs from its plan length or a
// span lies outside the plan.
DynamicGraph generate(const EvolutionPlan& plan, const GeneratorParams& params, const GenerateOptions& options = {},
                      GenerationTrace* trace = nullptr);

}  // namespace dynbench

#endif  // DYNBENCH_GENERATOR_HPP_
