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

#include "dynbench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

#include "dynbench/detectors.hpp"
#include "dynbench/generator.hpp"
#include "dynbench/io.hpp"
#include "dynbench/random_scenario.hpp"

namespace dynbench {

namespace {

DynamicGraph benchmarkGraph(std::size_t m, std::size_t operations, Step steps, const BenchParams& p) {
  RandomScenarioParams rp;
  rp.m = m;
  rp.o = operations;
  rp.seed = p.seed;
  const auto scenario = randomScenario(rp);
  const GeneratorParams gp = GeneratorParams::fromMu(p.mu, p.betaR, p.seed);
  const auto run = runScenario(scenario.events, p.seed, DsabmTransitionCost(gp));
  GenerateOptions opts;
  opts.stepLimit = steps;
  return generate(run.plan, gp, opts);
}

DynamicGraph prefix(const DynamicGraph& g, Step steps) {
  DynamicGraph out;
  for (Step t = 0; t < std::min<std::size_t>(steps, g.numSteps()); ++t) out.append(g.at(t));
  return out;
}

double meanNodes(const DynamicGraph& g) {
  if (g.numSteps() == 0) return 0.0;
  double total = 0.0;
  for (const auto& s : g.snapshots()) total += static_cast<double>(s.nodes.size());
  return total / static_cast<double>(g.numSteps());
}

double timeDetector(const Detector& detector, const DynamicGraph& g, const BenchParams& p) {
  DetectorOptions o;
  o.seed = p.seed;
  o.jobs = p.jobs;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned r = 0; r < std::max(1u, p.repeats); ++r) {
    const auto start = std::chrono::steady_clock::now();
    const auto found = detector(g, o);
    const auto stop = std::chrono::steady_clock::now();
    (void)found;
    best = std::min(best, std::chrono::duration<double>(stop - start).count());
  }
  return best;
}

}  // namespace

std::vector<BenchRow> runBench(const BenchParams& params) {
  std::vector<const Detector*> detectors;
  for (const auto& name : params.methods) detectors.push_back(&findDetector(name));
  std::vector<BenchRow> rows;

  if (!params.stepPrefixes.empty()) {
    const Step longest = *std::max_element(params.stepPrefixes.begin(), params.stepPrefixes.end());
    // About 50 nodes per step; enough operations to outlast the longest prefix.
    std::size_t operations = 50;
    DynamicGraph full = benchmarkGraph(5, operations, longest, params);
    while (full.numSteps() < longest && operations < 100000) {
      operations *= 2;
      full = benchmarkGraph(5, operations, longest, params);
    }
    for (Step steps : params.stepPrefixes) {
      const DynamicGraph g = prefix(full, steps);
      for (std::size_t i = 0; i < detectors.size(); ++i) {
        rows.push_back({"steps", params.methods[i], steps, g.numSteps(), meanNodes(g),
                        timeDetector(*detectors[i], g, params)});
      }
    }
  }
  for (std::size_t m : params.mValues) {
    const DynamicGraph g = benchmarkGraph(m, m, params.sliceSteps, params);
    for (std::size_t i = 0; i < detectors.size(); ++i) {
      rows.push_back({"m", params.methods[i], m, g.numSteps(), meanNodes(g), timeDetector(*detectors[i], g, params)});
    }
  }
  return rows;
}

std::string formatBenchTable(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "sweep\tmethod\tvalue\tsteps\tmean_nodes\tseconds\n";
  for (const auto& r : rows) {
    out << r.sweep << '\t' << r.method << '\t' << r.value << '\t' << r.steps << '\t' << formatDouble(r.meanNodes)
        << '\t' << formatDouble(r.seconds) << '\n';
  }
  return out.str();
}

}  // namespace dynbench
