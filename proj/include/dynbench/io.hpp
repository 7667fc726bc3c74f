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

// Text formats.
//
// Edge stream:
//   # tnet v1
//   # steps <T>                  (omitted when T = 0)
//   <t> <u> <v>                  one line per edge, sorted by (t, u, v), u < v
//   N <t> <u>                    isolated node u present at t
// Within a step, edge lines come first, then node lines sorted by node.
//
// Partition:
//   # partition v1
//   # steps <T>                  (omitted when T = 0)
//   <t> <node> <label>           sorted by (t, node); the label runs to the
//                                end of the line
// Undefined entries are not written.
//
// Readers reject malformed, unsorted or duplicated input with the offending
// line number.

#ifndef DYNBENCH_IO_HPP_
#define DYNBENCH_IO_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "dynbench/core.hpp"
#include "dynbench/metrics.hpp"

namespace dynbench {

std::string formatEdges(const DynamicGraph& g);
DynamicGraph parseEdges(std::string_view text);
void writeEdges(const std::filesystem::path& path, const DynamicGraph& g);
DynamicGraph readEdges(const std::filesystem::path& path);

std::string formatPartition(const LongitudinalPartition& p);
LongitudinalPartition parsePartition(std::string_view text);
void writePartition(const std::filesystem::path& path, const LongitudinalPartition& p);
LongitudinalPartition readPartition(const std::filesystem::path& path);

// Flat `key = value` lines.
std::string formatReport(const EvaluationReport& report);
// The same content as a JSON document.
std::string reportJson(const EvaluationReport& report);

// Ordered `key = value` settings.
using Manifest = std::map<std::string, std::string>;
std::string formatManifest(const Manifest& manifest);
Manifest parseManifest(std::string_view text);

struct TamStyle {
  int cellWidth = 4;
  int rowHeight = 6;
};

// Temporal activity map: one row per node (ascending id), one column per
// step. Labelled cells take a color derived from the label, undefined cells
// are grey and absent cells are left white. With `presence`, nodes of its
// snapshots that carry no entry in `p` are drawn grey. Throws on an empty
// partition.
std::string exportTAM(const LongitudinalPartition& p, const DynamicGraph* presence = nullptr,
                      const TamStyle& style = {});
// "#rrggbb" for a label.
std::string labelColor(const Label& label);

// Shortest round-trip decimal form of a double.
std::string formatDouble(double x);

std::string readFile(const std::filesystem::path& path);
// Writes through a temporary file in the same directory, then renames it.
void writeFileAtomic(const std::filesystem::path& path, std::string_view content);

}  // namespace dynbench

#endif  // DYNBENCH_IO_HPP_
