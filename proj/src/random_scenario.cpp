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

#include "dynbench/random_scenario.hpp"

#include "dynbench/random.hpp"

namespace dynbench {

void RandomScenarioParams::validate() const {
  if (m < 2) throw Error("a random scenario needs at least 2 communities");
  if (sMin < 2) throw Error("minimum community size must be at least 2");
  if (sMin > sMax) throw Error("minimum community size exceeds the maximum");
}

namespace {

struct Tracked {
  CommunityRef ref;
  std::size_t size = 0;
  Label label;
  std::uint64_t order = 0;  // yield order, mirrors engine ids
};

}  // namespace

RandomScenario randomScenario(const RandomScenarioParams& params) {
  params.validate();
  Rng rng = makeRng({params.seed, 0x72616e64ULL});
  ScenarioBuilder sb;
  RandomScenario out;

  std::vector<std::size_t> sizes;
  std::vector<Label> labels;
  std::size_t nextLabel = 0;
  for (std::size_t i = 0; i < params.m; ++i) {
    sizes.push_back(params.sMin + uniformIndex(rng, params.sMax - params.sMin + 1));
    labels.emplace_back("C" + std::to_string(nextLabel++));
  }
  const auto init = sb.initialize(sizes, labels);

  std::vector<Tracked> active;
  std::uint64_t order = 0;
  for (std::size_t i = 0; i < init.size(); ++i) active.push_back({init[i], sizes[i], labels[i], order++});
  std::vector<CommunityRef> previous = init;

  for (std::size_t op = 0; op < params.o; ++op) {
    const std::size_t pick = uniformIndex(rng, active.size());
    const Tracked c = active[pick];
    const Timing timing{0, previous};
    if (c.size > params.sMax) {
      const std::size_t large = (4 * c.size + 3) / 6;
      const std::size_t small = c.size - large;
      Label fresh("C" + std::to_string(nextLabel++));
      const auto parts = sb.split(c.ref, {c.label, fresh}, {large, small}, timing);
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(pick));
      active.push_back({parts[0], large, c.label, order++});
      active.push_back({parts[1], small, fresh, order++});
      previous = parts;
    } else if (active.size() < 2) {
      out.skipped.push_back("operation " + std::to_string(op) + ": merge needs a second community");
    } else {
      std::size_t other = active.size();
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (i == pick) continue;
        if (other == active.size() || active[i].size < active[other].size ||
            (active[i].size == active[other].size && active[i].order < active[other].order)) {
          other = i;
        }
      }
      const Tracked d = active[other];
      const bool keepC = c.size > d.size || (c.size == d.size && c.order < d.order);
      const Label label = keepC ? c.label : d.label;
      const CommunityRef merged = sb.merge({c.ref, d.ref}, label, timing);
      std::erase_if(active, [&](const Tracked& t) { return t.order == c.order || t.order == d.order; });
      active.push_back({merged, c.size + d.size, label, order++});
      previous = {merged};
    }
  }
  out.events = sb.events();
  return out;
}

}  // namespace dynbench
