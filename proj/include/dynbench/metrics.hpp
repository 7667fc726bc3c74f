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

// Partition comparison and dynamic partition quality scores.
//
// Clusterings are compared as two equally long sequences of cluster tags.
// Mutual information uses natural logarithms. Comparisons against a ground
// truth only consider (node, step) tuples defined on both sides.

#ifndef DYNBENCH_METRICS_HPP_
#define DYNBENCH_METRICS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dynbench/core.hpp"
#include "dynbench/louvain.hpp"

namespace dynbench {

using Clustering = std::vector<std::size_t>;

// Normalized by the arithmetic mean of the two entropies.
double nmi(const Clustering& a, const Clustering& b);
// Adjusted mutual information (arithmetic mean normalization, expected mutual
// information under the hypergeometric model).
double ami(const Clustering& a, const Clustering& b);
double ari(const Clustering& a, const Clustering& b);

// The partitions must cover the same nodes.
double nmi(const StaticPartition& a, const StaticPartition& b);
double ami(const StaticPartition& a, const StaticPartition& b);
double ari(const StaticPartition& a, const StaticPartition& b);

enum class Similarity { kAmi, kAri };

struct StepScores {
  std::vector<Step> steps;       // steps that were scored
  std::vector<double> perStep;   // aligned with `steps`
  std::vector<Step> skipped;     // steps with nothing to compare
  double mean = 0.0;
};

StepScores avgStepScores(const LongitudinalPartition& truth, const LongitudinalPartition& found, Similarity score);
// Modularity of `found` on each non-empty snapshot. Nodes without a label are
// scored as singletons.
StepScores avgModularity(const DynamicGraph& g, const LongitudinalPartition& found);

enum class SmPMode { kLiteral, kSimilarity };

// Mean NMI between successive steps over their common defined nodes
// (similarity) or one minus it (literal). Throws when there are fewer than
// 2 steps or no successive pair shares a node.
double smP(const LongitudinalPartition& found, SmPMode mode = SmPMode::kSimilarity);
double meanSuccessiveNmi(const LongitudinalPartition& found);

// Label changes between consecutive defined steps, summed over nodes.
std::size_t labelChanges(const LongitudinalPartition& found);
// 1 / (1 + labelChanges).
double smN(const LongitudinalPartition& found);

// Mean over nodes of the entropy of each node's label distribution.
double meanLabelEntropy(const LongitudinalPartition& found);
// 1 / (1 + meanLabelEntropy).
double smL(const LongitudinalPartition& found);

// AMI / ARI over the flattened (node, step) tuples. Throws when no tuple is
// defined on both sides.
double lami(const LongitudinalPartition& truth, const LongitudinalPartition& found);
double lari(const LongitudinalPartition& truth, const LongitudinalPartition& found);

struct SmoothnessReport {
  double smP = 0.0;          // similarity mode
  double smPLiteral = 0.0;
  double meanSuccessiveNmi = 0.0;
  double smN = 0.0;
  std::size_t labelChanges = 0;
  double smL = 0.0;
  double meanLabelEntropy = 0.0;
};

struct EvaluationReport {
  std::string method;
  std::map<std::string, std::string> params;
  StepScores avgAMI;
  StepScores avgARI;
  StepScores avgQ;
  SmoothnessReport smoothness;
  double lami = 0.0;
  double lari = 0.0;
};

SmoothnessReport smoothness(const LongitudinalPartition& found);

EvaluationReport evaluate(const DynamicGraph& g, const LongitudinalPartition& truth, const LongitudinalPartition& found,
                          std::string method);

// Scores used for ranking, higher is better, in a fixed order:
// avg_ami, avg_ari, avg_q, sm_p, sm_n, sm_l, lami, lari.
std::vector<std::pair<std::string, double>> rankedScores(const EvaluationReport& report);

// Ranks per score name, aligned with `reports`; 1 is best and ties share the
// mean rank. Throws with fewer than 2 reports.
std::map<std::string, std::vector<double>> rankTable(const std::vector<EvaluationReport>& reports);

// Ranks of `values` (descending, mean rank on ties).
std::vector<double> descendingRanks(const std::vector<double>& values);

}  // namespace dynbench

#endif  // DYNBENCH_METRICS_HPP_
