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


#ifndef DYNBENCH_TESTS_HELPERS_HPP_
#define DYNBENCH_TESTS_HELPERS_HPP_

#include <algorithm>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "dynbench/core.hpp"
#include "dynbench/generator.hpp"
#include "dynbench/io.hpp"
#include "dynbench/random.hpp"
#include "dynbench/scenario.hpp"

namespace dynbench::testing {

inline std::filesystem::path dataPath(const std::string& name) {
  return std::filesystem::path(DYNBENCH_TEST_DATA) / name;
}

inline std::string listing1Text() { return readFile(dataPath("listing1.dcs")); }

inline Snapshot snapshotOf(Step t, NodeSet nodes, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back(makeEdge(a, b));
  return Snapshot::make(t, std::move(nodes), std::move(edges));
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dynbench_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Snapshots of at most 8 nodes drawn from small generated benchmarks: two or
// three communities of 2 to 4 nodes that merge or split, across a grid of
// generator parameters. Edgeless snapshots are dropped.
inline std::vector<Snapshot> smallGeneratedCorpus() {
  std::vector<Snapshot> out;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Rng rng = makeRng({seed, 0x736d616c6cULL});
    const std::size_t m = 2 + uniformIndex(rng, 2);
    std::vector<std::size_t> sizes;
    std::vector<Label> labels;
    std::size_t total = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t room = 8 - total - 2 * (m - 1 - i);
      sizes.push_back(std::min<std::size_t>(2 + uniformIndex(rng, 3), room));
      total += sizes.back();
      labels.emplace_back("c" + std::to_string(i));
    }
    for (const double alpha : {0.6, 0.8, 1.0}) {
      for (const double beta : {0.0, 0.2, 0.5}) {
        const GeneratorParams gp{alpha, beta, 0.05, seed};
        ScenarioBuilder b;
        const auto c = b.initialize(sizes, labels);
        const auto merged = b.merge({c[0], c[1]}, Label("c0"), {2, {}});
        b.split(merged, {Label("c0"), Label("c1")}, {sizes[0], sizes[1]}, {2, {}});
        const ScenarioRun run = runScenario(b.events(), seed, DsabmTransitionCost(gp));
        const DynamicGraph g = generate(run.plan, gp);
        for (const Snapshot& s : g.snapshots()) {
          if (!s.edges.empty()) out.push_back(s);
        }
      }
    }
  }
  return out;
}

}  // namespace dynbench::testing

#endif  // DYNBENCH_TESTS_HELPERS_HPP_
