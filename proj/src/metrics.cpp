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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace dynbench {

namespace {

struct Contingency {
  std::size_t n = 0;
  std::vector<std::size_t> rows;  // cluster sizes in a
  std::vector<std::size_t> cols;  // cluster sizes in b
  // (row, col, count) for non-zero cells
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> cells;
  bool identical = false;  // equal up to relabeling
};

Clustering densify(const Clustering& c, std::size_t& count) {
  std::map<std::size_t, std::size_t> ids;
  Clustering out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = ids.emplace(c[i], ids.size()).first->second;
  count = ids.size();
  return out;
}

Contingency contingency(const Clustering& a, const Clustering& b) {
  if (a.size() != b.size()) throw Error("clusterings cover different numbers of elements");
  if (a.empty()) throw Error("clusterings are empty");
  Contingency t;
  t.n = a.size();
  std::size_t ka = 0;
  std::size_t kb = 0;
  const Clustering da = densify(a, ka);
  const Clustering db = densify(b, kb);
  t.rows.assign(ka, 0);
  t.cols.assign(kb, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cells;
  for (std::size_t i = 0; i < t.n; ++i) {
    ++t.rows[da[i]];
    ++t.cols[db[i]];
    ++cells[{da[i], db[i]}];
  }
  for (const auto& [key, count] : cells) t.cells.emplace_back(key.first, key.second, count);
  t.identical = ka == kb && cells.size() == ka;
  return t;
}

double entropy(const std::vector<std::size_t>& sizes, std::size_t n) {
  double h = 0.0;
  for (std::size_t s : sizes) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

double mutualInformation(const Contingency& t) {
  const double n = static_cast<double>(t.n);
  double mi = 0.0;
  for (const auto& [r, c, count] : t.cells) {
    const double nij = static_cast<double>(count);
    mi += nij / n * std::log(n * nij / (static_cast<double>(t.rows[r]) * static_cast<double>(t.cols[c])));
  }
  return std::max(mi, 0.0);
}

double expectedMutualInformation(const Contingency& t) {
  const std::size_t n = t.n;
  std::vector<double> lf(n + 1, 0.0);  // log k!
  for (std::size_t k = 1; k <= n; ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
  const double dn = static_cast<double>(n);
  double emi = 0.0;
  for (std::size_t a : t.rows) {
    for (std::size_t b : t.cols) {
      const std::size_t lo = std::max<std::size_t>(1, a + b > n ? a + b - n : 0);
      const std::size_t hi = std::min(a, b);
      const double fixed = lf[a] + lf[b] + lf[n - a] + lf[n - b] - lf[n];
      for (std::size_t nij = lo; nij <= hi; ++nij) {
        const double x = static_cast<double>(nij);
        const double term = x / dn * std::log(dn * x / (static_cast<double>(a) * static_cast<double>(b)));
        const double logP = fixed - lf[nij] - lf[a - nij] - lf[b - nij] - lf[n - a - b + nij];
        emi += term * std::exp(logP);
      }
    }
  }
  return emi;
}

double comb2(std::size_t x) { return static_cast<double>(x) * (static_cast<double>(x) - 1.0) / 2.0; }

Clustering clusteringOf(const StaticPartition& p) { return p.assignment(); }

void checkSameNodes(const StaticPartition& a, const StaticPartition& b) {
  if (a.nodes() != b.nodes()) throw Error("partitions cover different node sets");
}

// Interns label strings into cluster tags.
class Tagger {
 public:
  std::size_t operator()(const Label& l) { return ids_.emplace(l.value, ids_.size()).first->second; }

 private:
  std::map<std::string, std::size_t> ids_;
};

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Both sides as clusterings over the tuples defined in both.
std::pair<Clustering, Clustering> flatten(const LongitudinalPartition& truth, const LongitudinalPartition& found) {
  Tagger ta;
  Tagger tb;
  Clustering a;
  Clustering b;
  const std::size_t steps = std::min(truth.numSteps(), found.numSteps());
  for (Step t = 0; t < steps; ++t) {
    const auto& ma = truth.at(t);
    const auto& mb = found.at(t);
    for (const auto& [node, la] : ma) {
      if (!la) continue;
      auto it = mb.find(node);
      if (it == mb.end() || !it->second) continue;
      a.push_back(ta(*la));
      b.push_back(tb(*it->second));
    }
  }
  if (a.empty()) throw Error("nothing to compare: no (node, step) is defined in both partitions");
  return {std::move(a), std::move(b)};
}

}  // namespace

double nmi(const Clustering& a, const Clustering& b) {
  const Contingency t = contingency(a, b);
  if (t.identical) return 1.0;
  const double ha = entropy(t.rows, t.n);
  const double hb = entropy(t.cols, t.n);
  const double norm = (ha + hb) / 2.0;
  if (norm <= 0.0) return 1.0;
  return std::clamp(mutualInformation(t) / norm, 0.0, 1.0);
}

double ami(const Clustering& a, const Clustering& b) {
  const Contingency t = contingency(a, b);
  if (t.identical) return 1.0;
  const double mi = mutualInformation(t);
  const double emi = expectedMutualInformation(t);
  const double norm = (entropy(t.rows, t.n) + entropy(t.cols, t.n)) / 2.0;
  double denom = norm - emi;
  const double eps = std::numeric_limits<double>::epsilon();
  denom = denom < 0.0 ? std::min(denom, -eps) : std::max(denom, eps);
  return (mi - emi) / denom;
}

double ari(const Clustering& a, const Clustering& b) {
  const Contingency t = contingency(a, b);
  if (t.identical) return 1.0;
  double index = 0.0;
  for (const auto& cell : t.cells) index += comb2(std::get<2>(cell));
  double sumA = 0.0;
  for (std::size_t s : t.rows) sumA += comb2(s);
  double sumB = 0.0;
  for (std::size_t s : t.cols) sumB += comb2(s);
  const double expected = sumA * sumB / comb2(t.n);
  const double maxIndex = (sumA + sumB) / 2.0;
  if (maxIndex == expected) return 0.0;
  return (index - expected) / (maxIndex - expected);
}

double nmi(const StaticPartition& a, const StaticPartition& b) {
  checkSameNodes(a, b);
  return nmi(clusteringOf(a), clusteringOf(b));
}

double ami(const StaticPartition& a, const StaticPartition& b) {
  checkSameNodes(a, b);
  return ami(clusteringOf(a), clusteringOf(b));
}

double ari(const StaticPartition& a, const StaticPartition& b) {
  checkSameNodes(a, b);
  return ari(clusteringOf(a), clusteringOf(b));
}

StepScores avgStepScores(const LongitudinalPartition& truth, const LongitudinalPartition& found, Similarity score) {
  StepScores out;
  const std::size_t steps = std::max(truth.numSteps(), found.numSteps());
  for (Step t = 0; t < steps; ++t) {
    Clustering a;
    Clustering b;
    if (t < truth.numSteps() && t < found.numSteps()) {
      Tagger ta;
      Tagger tb;
      const auto& mb = found.at(t);
      for (const auto& [node, la] : truth.at(t)) {
        if (!la) continue;
        auto it = mb.find(node);
        if (it == mb.end() || !it->second) continue;
        a.push_back(ta(*la));
        b.push_back(tb(*it->second));
      }
    }
    if (a.empty()) {
      out.skipped.push_back(t);
      continue;
    }
    out.steps.push_back(t);
    out.perStep.push_back(score == Similarity::kAmi ? ami(a, b) : ari(a, b));
  }
  out.mean = mean(out.perStep);
  return out;
}

StepScores avgModularity(const DynamicGraph& g, const LongitudinalPartition& found) {
  StepScores out;
  for (Step t = 0; t < g.numSteps(); ++t) {
    const Snapshot& s = g.at(t);
    if (s.nodes.empty()) {
      out.skipped.push_back(t);
      continue;
    }
    Tagger tagger;
    std::vector<std::size_t> tags(s.nodes.size());
    const std::size_t loose = std::numeric_limits<std::size_t>::max() / 2;
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      const std::optional<Label>* l = t < found.numSteps() ? found.find(s.nodes[i], t) : nullptr;
      tags[i] = (l != nullptr && *l) ? tagger(**l) : loose + i;
    }
    out.steps.push_back(t);
    out.perStep.push_back(modularity(s, StaticPartition(s.nodes, tags)));
  }
  out.mean = mean(out.perStep);
  return out;
}

double meanSuccessiveNmi(const LongitudinalPartition& found) {
  if (found.numSteps() < 2) throw Error("partition smoothness needs at least 2 steps");
  std::vector<double> values;
  for (Step t = 0; t + 1 < found.numSteps(); ++t) {
    Tagger ta;
    Tagger tb;
    Clustering a;
    Clustering b;
    const auto& next = found.at(t + 1);
    for (const auto& [node, la] : found.at(t)) {
      if (!la) continue;
      auto it = next.find(node);
      if (it == next.end() || !it->second) continue;
      a.push_back(ta(*la));
      b.push_back(tb(*it->second));
    }
    if (!a.empty()) values.push_back(nmi(a, b));
  }
  if (values.empty()) throw Error("no successive steps share a labelled node");
  return mean(values);
}

double smP(const LongitudinalPartition& found, SmPMode mode) {
  const double m = meanSuccessiveNmi(found);
  return mode == SmPMode::kSimilarity ? m : 1.0 - m;
}

std::size_t labelChanges(const LongitudinalPartition& found) {
  std::size_t changes = 0;
  for (Step t = 0; t + 1 < found.numSteps(); ++t) {
    const auto& next = found.at(t + 1);
    for (const auto& [node, la] : found.at(t)) {
      if (!la) continue;
      auto it = next.find(node);
      if (it == next.end() || !it->second) continue;
      if (*it->second != *la) ++changes;
    }
  }
  return changes;
}

double smN(const LongitudinalPartition& found) { return 1.0 / (1.0 + static_cast<double>(labelChanges(found))); }

double meanLabelEntropy(const LongitudinalPartition& found) {
  std::map<NodeId, std::map<std::string, std::size_t>> counts;
  for (Step t = 0; t < found.numSteps(); ++t) {
    for (const auto& [node, l] : found.at(t)) {
      if (l) ++counts[node][l->value];
    }
  }
  if (counts.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [node, labels] : counts) {
    std::vector<std::size_t> sizes;
    std::size_t n = 0;
    for (const auto& [label, c] : labels) {
      sizes.push_back(c);
      n += c;
    }
    total += entropy(sizes, n);
  }
  return total / static_cast<double>(counts.size());
}

double smL(const LongitudinalPartition& found) { return 1.0 / (1.0 + meanLabelEntropy(found)); }

double lami(const LongitudinalPartition& truth, const LongitudinalPartition& found) {
  const auto [a, b] = flatten(truth, found);
  return ami(a, b);
}

double lari(const LongitudinalPartition& truth, const LongitudinalPartition& found) {
  const auto [a, b] = flatten(truth, found);
  return ari(a, b);
}

SmoothnessReport smoothness(const LongitudinalPartition& found) {
  SmoothnessReport r;
  r.meanSuccessiveNmi = meanSuccessiveNmi(found);
  r.smP = r.meanSuccessiveNmi;
  r.smPLiteral = 1.0 - r.meanSuccessiveNmi;
  r.labelChanges = labelChanges(found);
  r.smN = 1.0 / (1.0 + static_cast<double>(r.labelChanges));
  r.meanLabelEntropy = meanLabelEntropy(found);
  r.smL = 1.0 / (1.0 + r.meanLabelEntropy);
  return r;
}

EvaluationReport evaluate(const DynamicGraph& g, const LongitudinalPartition& truth, const LongitudinalPartition& found,
                          std::string method) {
  EvaluationReport r;
  r.method = std::move(method);
  r.avgAMI = avgStepScores(truth, found, Similarity::kAmi);
  r.avgARI = avgStepScores(truth, found, Similarity::kAri);
  r.avgQ = avgModularity(g, found);
  r.smoothness = smoothness(found);
  r.lami = lami(truth, found);
  r.lari = lari(truth, found);
  return r;
}

std::vector<std::pair<std::string, double>> rankedScores(const EvaluationReport& r) {
  return {{"avg_ami", r.avgAMI.mean},   {"avg_ari", r.avgARI.mean}, {"avg_q", r.avgQ.mean},
          {"sm_p", r.smoothness.smP},   {"sm_n", r.smoothness.smN}, {"sm_l", r.smoothness.smL},
          {"lami", r.lami},             {"lari", r.lari}};
}

std::vector<double> descendingRanks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = shared;
    i = j;
  }
  return ranks;
}

std::map<std::string, std::vector<double>> rankTable(const std::vector<EvaluationReport>& reports) {
  if (reports.size() < 2) throw Error("ranking needs at least 2 reports");
  std::map<std::string, std::vector<double>> values;
  for (const auto& r : reports) {
    for (const auto& [name, v] : rankedScores(r)) values[name].push_back(v);
  }
  std::map<std::string, std::vector<double>> out;
  for (const auto& [name, v] : values) out[name] = descendingRanks(v);
  return out;
}

}  // namespace dynbench
