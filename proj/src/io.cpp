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

#include "dynbench/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>
#include <vector>

#include "json.hpp"

namespace dynbench {

namespace {

[[noreturn]] void fail(const char* what, std::size_t line, const std::string& msg) {
  throw Error(std::string(what) + " line " + std::to_string(line) + ": " + msg);
}

// Splits on single spaces; at most `maxParts` parts, the last one keeps the
// rest of the line.
std::vector<std::string_view> split(std::string_view line, std::size_t maxParts) {
  std::vector<std::string_view> parts;
  while (parts.size() + 1 < maxParts) {
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) break;
    parts.push_back(line.substr(0, sp));
    line = line.substr(sp + 1);
  }
  parts.push_back(line);
  return parts;
}

template <typename T>
bool parseUnsigned(std::string_view s, T& out) {
  if (s.empty() || s.front() == '+' || s.front() == '-') return false;
  if (s.size() > 1 && s.front() == '0') return false;  // canonical form only
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Iterates lines; the last line may lack its newline.
template <typename Fn>
void forEachLine(std::string_view text, Fn&& fn) {
  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    fn(++lineNo, text.substr(pos, end - pos));
    pos = end + 1;
  }
}

std::optional<Step> parseStepsHeader(std::string_view line) {
  constexpr std::string_view kPrefix = "# steps ";
  if (line.substr(0, kPrefix.size()) != kPrefix) return std::nullopt;
  Step t = 0;
  if (!parseUnsigned(line.substr(kPrefix.size()), t)) return std::nullopt;
  return t;
}

}  // namespace

std::string formatDouble(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf.data(), ptr);
}

// ---------------------------------------------------------------------------
// Edge stream

std::string formatEdges(const DynamicGraph& g) {
  std::ostringstream out;
  out << "# tnet v1\n";
  if (g.numSteps() > 0) out << "# steps " << g.numSteps() << "\n";
  for (const auto& s : g.snapshots()) {
    std::vector<bool> touched(s.nodes.size(), false);
    for (const auto& e : s.edges) {
      out << s.step << ' ' << e.u << ' ' << e.v << '\n';
      touched[std::lower_bound(s.nodes.begin(), s.nodes.end(), e.u) - s.nodes.begin()] = true;
      touched[std::lower_bound(s.nodes.begin(), s.nodes.end(), e.v) - s.nodes.begin()] = true;
    }
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      if (!touched[i]) out << "N " << s.step << ' ' << s.nodes[i] << '\n';
    }
  }
  return out.str();
}

DynamicGraph parseEdges(std::string_view text) {
  constexpr const char* kWhat = "edges file";
  std::optional<Step> steps;
  bool sawHeader = false;
  struct Pending {
    NodeSet isolated;  // sorted by construction
    std::vector<Edge> edges;
  };
  std::vector<Pending> perStep;
  // Position of the last record, to enforce ordering.
  Step lastStep = 0;
  int lastKind = -1;  // 0 = edge, 1 = node
  Edge lastEdge{};
  NodeId lastNode = 0;
  bool any = false;

  forEachLine(text, [&](std::size_t lineNo, std::string_view line) {
    if (lineNo == 1) {
      if (line != "# tnet v1") fail(kWhat, lineNo, "expected header '# tnet v1'");
      sawHeader = true;
      return;
    }
    if (lineNo == 2 && !line.empty() && line.front() == '#') {
      steps = parseStepsHeader(line);
      if (!steps) fail(kWhat, lineNo, "expected '# steps <T>'");
      perStep.resize(*steps);
      return;
    }
    if (!steps) fail(kWhat, lineNo, "records before the '# steps' header");
    const auto parts = split(line, 4);
    Step t = 0;
    if (parts.size() == 3 && parts[0] == "N") {
      NodeId u = 0;
      if (!parseUnsigned(parts[1], t) || !parseUnsigned(parts[2], u)) fail(kWhat, lineNo, "malformed node line");
      if (t >= *steps) fail(kWhat, lineNo, "step out of range");
      if (any && (t < lastStep || (t == lastStep && lastKind == 1 && u <= lastNode))) {
        fail(kWhat, lineNo, "records out of order or duplicated");
      }
      perStep[t].isolated.push_back(u);
      lastKind = 1;
      lastNode = u;
    } else if (parts.size() == 3) {
      Edge e;
      if (!parseUnsigned(parts[0], t) || !parseUnsigned(parts[1], e.u) || !parseUnsigned(parts[2], e.v)) {
        fail(kWhat, lineNo, "malformed edge line");
      }
      if (e.u >= e.v) fail(kWhat, lineNo, "edge endpoints must satisfy u < v");
      if (t >= *steps) fail(kWhat, lineNo, "step out of range");
      if (any && (t < lastStep || (t == lastStep && (lastKind == 1 || !(lastEdge < e))))) {
        fail(kWhat, lineNo, "records out of order or duplicated");
      }
      perStep[t].edges.push_back(e);
      lastKind = 0;
      lastEdge = e;
    } else {
      fail(kWhat, lineNo, "expected 't u v' or 'N t u'");
    }
    lastStep = t;
    any = true;
  });
  if (!sawHeader) throw Error("edges file: missing header '# tnet v1'");

  DynamicGraph g;
  for (Step t = 0; t < perStep.size(); ++t) {
    NodeSet endpoints;
    for (const auto& e : perStep[t].edges) {
      endpoints.push_back(e.u);
      endpoints.push_back(e.v);
    }
    endpoints = makeNodeSet(std::move(endpoints));
    for (NodeId u : perStep[t].isolated) {
      if (std::binary_search(endpoints.begin(), endpoints.end(), u)) {
        throw Error("edges file: node " + std::to_string(u) + " is listed as isolated at step " + std::to_string(t) +
                    " but has edges");
      }
    }
    NodeSet all = setUnion(endpoints, perStep[t].isolated);
    g.append(Snapshot::make(t, std::move(all), std::move(perStep[t].edges)));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Partition

std::string formatPartition(const LongitudinalPartition& p) {
  std::ostringstream out;
  out << "# partition v1\n";
  if (p.numSteps() > 0) out << "# steps " << p.numSteps() << "\n";
  for (Step t = 0; t < p.numSteps(); ++t) {
    for (const auto& [node, label] : p.at(t)) {
      if (label) out << t << ' ' << node << ' ' << label->value << '\n';
    }
  }
  return out.str();
}

LongitudinalPartition parsePartition(std::string_view text) {
  constexpr const char* kWhat = "partition file";
  std::optional<Step> steps;
  bool sawHeader = false;
  LongitudinalPartition p;
  bool any = false;
  Step lastT = 0;
  NodeId lastNode = 0;
  forEachLine(text, [&](std::size_t lineNo, std::string_view line) {
    if (lineNo == 1) {
      if (line != "# partition v1") fail(kWhat, lineNo, "expected header '# partition v1'");
      sawHeader = true;
      return;
    }
    if (lineNo == 2 && !line.empty() && line.front() == '#') {
      steps = parseStepsHeader(line);
      if (!steps) fail(kWhat, lineNo, "expected '# steps <T>'");
      p = LongitudinalPartition(*steps);
      return;
    }
    if (!steps) fail(kWhat, lineNo, "records before the '# steps' header");
    const auto parts = split(line, 3);
    Step t = 0;
    NodeId node = 0;
    if (parts.size() != 3 || !parseUnsigned(parts[0], t) || !parseUnsigned(parts[1], node)) {
      fail(kWhat, lineNo, "expected 't node label'");
    }
    if (parts[2].empty()) fail(kWhat, lineNo, "empty label");
    if (t >= *steps) fail(kWhat, lineNo, "step out of range");
    if (any && (t < lastT || (t == lastT && node <= lastNode))) {
      fail(kWhat, lineNo, t == lastT && node == lastNode ? "duplicate (t, node)" : "records out of order");
    }
    p.set(node, t, Label(std::string(parts[2])));
    any = true;
    lastT = t;
    lastNode = node;
  });
  if (!sawHeader) throw Error("partition file: missing header '# partition v1'");
  return p;
}

// ---------------------------------------------------------------------------
// Files

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void writeFileAtomic(const std::filesystem::path& path, std::string_view content) {
  std::random_device rd;
  const auto tmp = path.parent_path() / (path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at " + path.string());
  }
}

void writeEdges(const std::filesystem::path& path, const DynamicGraph& g) { writeFileAtomic(path, formatEdges(g)); }
DynamicGraph readEdges(const std::filesystem::path& path) { return parseEdges(readFile(path)); }
void writePartition(const std::filesystem::path& path, const LongitudinalPartition& p) {
  writeFileAtomic(path, formatPartition(p));
}
LongitudinalPartition readPartition(const std::filesystem::path& path) { return parsePartition(readFile(path)); }

// ---------------------------------------------------------------------------
// Reports and manifests

namespace {

std::vector<std::pair<std::string, std::string>> reportEntries(const EvaluationReport& r) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("method", r.method);
  for (const auto& [k, v] : r.params) kv.emplace_back("param." + k, v);
  const auto steps = [&](const char* key, const StepScores& s) {
    kv.emplace_back(key, formatDouble(s.mean));
    kv.emplace_back(std::string(key) + ".scored_steps", std::to_string(s.steps.size()));
    kv.emplace_back(std::string(key) + ".skipped_steps", std::to_string(s.skipped.size()));
  };
  steps("avg_ami", r.avgAMI);
  steps("avg_ari", r.avgARI);
  steps("avg_q", r.avgQ);
  kv.emplace_back("sm_p", formatDouble(r.smoothness.smP));
  kv.emplace_back("sm_p.literal", formatDouble(r.smoothness.smPLiteral));
  kv.emplace_back("sm_p.mean_successive_nmi", formatDouble(r.smoothness.meanSuccessiveNmi));
  kv.emplace_back("sm_n", formatDouble(r.smoothness.smN));
  kv.emplace_back("sm_n.label_changes", std::to_string(r.smoothness.labelChanges));
  kv.emplace_back("sm_l", formatDouble(r.smoothness.smL));
  kv.emplace_back("sm_l.mean_label_entropy", formatDouble(r.smoothness.meanLabelEntropy));
  kv.emplace_back("lami", formatDouble(r.lami));
  kv.emplace_back("lari", formatDouble(r.lari));
  return kv;
}

}  // namespace

std::string formatReport(const EvaluationReport& report) {
  std::ostringstream out;
  for (const auto& [k, v] : reportEntries(report)) out << k << " = " << v << '\n';
  return out.str();
}

std::string reportJson(const EvaluationReport& r) {
  nlohmann::ordered_json j;
  j["method"] = r.method;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  const auto steps = [](const StepScores& s) {
    nlohmann::ordered_json o;
    o["mean"] = s.mean;
    o["steps"] = s.steps;
    o["per_step"] = s.perStep;
    o["skipped"] = s.skipped;
    return o;
  };
  j["avg_ami"] = steps(r.avgAMI);
  j["avg_ari"] = steps(r.avgARI);
  j["avg_q"] = steps(r.avgQ);
  j["smoothness"] = {{"sm_p", r.smoothness.smP},
                     {"sm_p_literal", r.smoothness.smPLiteral},
                     {"mean_successive_nmi", r.smoothness.meanSuccessiveNmi},
                     {"sm_n", r.smoothness.smN},
                     {"label_changes", r.smoothness.labelChanges},
                     {"sm_l", r.smoothness.smL},
                     {"mean_label_entropy", r.smoothness.meanLabelEntropy}};
  j["lami"] = r.lami;
  j["lari"] = r.lari;
  return j.dump(2) + "\n";
}

std::string formatManifest(const Manifest& manifest) {
  std::ostringstream out;
  for (const auto& [k, v] : manifest) {
    if (k.empty() || k.find_first_of(" =\n") != std::string::npos) throw Error("invalid manifest key '" + k + "'");
    if (v.find('\n') != std::string::npos) throw Error("manifest value for '" + k + "' spans lines");
    out << k << " = " << v << '\n';
  }
  return out.str();
}

Manifest parseManifest(std::string_view text) {
  Manifest m;
  forEachLine(text, [&](std::size_t lineNo, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const auto eq = line.find(" = ");
    if (eq == std::string_view::npos || eq == 0) fail("manifest", lineNo, "expected 'key = value'");
    std::string key(line.substr(0, eq));
    if (!m.emplace(key, std::string(line.substr(eq + 3))).second) fail("manifest", lineNo, "duplicate key " + key);
  });
  return m;
}

// ---------------------------------------------------------------------------
// Temporal activity map

std::string labelColor(const Label& label) {
  // 20 distinguishable colors, none of them grey.
  static constexpr std::array<const char*, 20> kPalette = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#aec7e8",
      "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#dbdb8d", "#9edae5", "#393b79", "#637939"};
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : label.value) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return kPalette[h % kPalette.size()];
}

std::string exportTAM(const LongitudinalPartition& p, const DynamicGraph* presence, const TamStyle& style) {
  NodeSet nodes = p.nodes();
  std::size_t steps = p.numSteps();
  if (presence != nullptr) {
    nodes = setUnion(nodes, presence->allNodes());
    steps = std::max(steps, presence->numSteps());
  }
  if (nodes.empty() || steps == 0) throw Error("cannot draw an empty partition");

  constexpr const char* kGrey = "#bdbdbd";
  const auto cellColor = [&](NodeId node, Step t) -> std::string {
    if (t < p.numSteps()) {
      if (const auto* l = p.find(node, t)) return *l ? labelColor(**l) : kGrey;
    }
    if (presence != nullptr && t < presence->numSteps()) {
      const auto& ns = presence->at(t).nodes;
      if (std::binary_search(ns.begin(), ns.end(), node)) return kGrey;
    }
    return {};
  };

  const long width = static_cast<long>(steps) * style.cellWidth;
  const long height = static_cast<long>(nodes.size()) * style.rowHeight;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" shape-rendering=\"crispEdges\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
  for (std::size_t row = 0; row < nodes.size(); ++row) {
    const NodeId node = nodes[row];
    out << "<g data-node=\"" << node << "\">\n";
    Step runStart = 0;
    std::string runColor = cellColor(node, 0);
    for (Step t = 1; t <= steps; ++t) {
      const std::string c = t < steps ? cellColor(node, t) : std::string("end");
      if (c == runColor) continue;
      if (!runColor.empty()) {
        out << "<rect x=\"" << static_cast<long>(runStart) * style.cellWidth << "\" y=\""
            << static_cast<long>(row) * style.rowHeight << "\" width=\""
            << static_cast<long>(t - runStart) * style.cellWidth << "\" height=\"" << style.rowHeight
            << "\" fill=\"" << runColor << "\"/>\n";
      }
      runStart = t;
      runColor = c;
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace dynbench
