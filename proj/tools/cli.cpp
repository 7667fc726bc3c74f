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

#include "cli.hpp"

#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "dynbench/bench.hpp"
#include "dynbench/detectors.hpp"
#include "dynbench/dsl.hpp"
#include "dynbench/generator.hpp"
#include "dynbench/io.hpp"
#include "dynbench/random_scenario.hpp"

namespace dynbench::cli {

namespace {

namespace fs = std::filesystem;

struct GenerateConfig {
  std::string outDir;
  std::string manifestIn;
  std::string scenarioFile;
  bool random = false;
  std::size_t m = 10;
  std::size_t sMin = 5;
  std::size_t sMax = 15;
  std::size_t o = 20;
  std::optional<double> mu;
  std::optional<double> alpha;
  std::optional<double> beta;
  double betaR = 0.01;
  std::uint64_t seed = 0;
};

struct DetectConfig {
  std::string edges;
  std::string method;
  std::string out;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double alphaSG = 0.9;
  double threshold = 0.3;
  std::optional<Step> window;
};

struct EvaluateConfig {
  std::string edges;
  std::string truth;
  std::string found;
  std::string method = "found";
  std::string out;
  std::string json;
};

struct BenchConfig {
  std::vector<Step> steps;
  std::vector<std::size_t> mValues;
  std::vector<std::string> methods = detectorNames();
  Step slice = 50;
  double mu = 0.2;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  unsigned repeats = 1;
  std::string out;
};

struct TamConfig {
  std::string partition;
  std::string edges;
  std::string out;
  int cellWidth = 4;
  int rowHeight = 6;
};

std::string fmt(double x) { return formatDouble(x); }

template <typename T>
T parseNumber(const Manifest& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) throw Error("manifest lacks '" + key + "'");
  T value{};
  if (!CLI::detail::lexical_cast(it->second, value)) throw Error("manifest value for '" + key + "' is malformed");
  return value;
}

// Replaces the generator settings by those recorded in a manifest.
void loadManifest(GenerateConfig& c) {
  const Manifest m = parseManifest(readFile(c.manifestIn));
  auto source = m.find("source");
  if (source == m.end()) throw Error("manifest lacks 'source'");
  if (source->second == "file") {
    c.random = false;
    c.scenarioFile = m.count("scenario_file") ? m.at("scenario_file") : "";
  } else if (source->second == "random") {
    c.random = true;
    c.m = parseNumber<std::size_t>(m, "m");
    c.sMin = parseNumber<std::size_t>(m, "smin");
    c.sMax = parseNumber<std::size_t>(m, "smax");
    c.o = parseNumber<std::size_t>(m, "o");
  } else {
    throw Error("manifest has unknown source '" + source->second + "'");
  }
  c.mu.reset();
  c.alpha = parseNumber<double>(m, "alpha");
  c.beta = parseNumber<double>(m, "beta");
  c.betaR = parseNumber<double>(m, "beta_r");
  c.seed = parseNumber<std::uint64_t>(m, "seed");
}

int doGenerate(GenerateConfig c, std::ostream& out) {
  if (!c.manifestIn.empty()) loadManifest(c);
  if (c.random == !c.scenarioFile.empty()) throw Error("give exactly one of --scenario or --random");

  GeneratorParams gp;
  if (c.mu) gp = GeneratorParams::fromMu(*c.mu, c.betaR, c.seed);
  if (c.alpha) gp.alpha = *c.alpha;
  if (c.beta) gp.beta = *c.beta;
  gp.betaR = c.betaR;
  gp.seed = c.seed;
  gp.validate();

  std::vector<EventDecl> events;
  Manifest manifest;
  manifest["format_version"] = "1";
  manifest["command"] = "generate";
  if (c.random) {
    RandomScenarioParams rp{c.m, c.sMin, c.sMax, c.o, c.seed};
    auto rs = randomScenario(rp);
    events = std::move(rs.events);
    manifest["source"] = "random";
    manifest["m"] = std::to_string(c.m);
    manifest["smin"] = std::to_string(c.sMin);
    manifest["smax"] = std::to_string(c.sMax);
    manifest["o"] = std::to_string(c.o);
    manifest["skipped_operations"] = std::to_string(rs.skipped.size());
  } else {
    events = dsl::compile(readFile(c.scenarioFile));
    manifest["source"] = "file";
    manifest["scenario_file"] = c.scenarioFile;
  }
  manifest["alpha"] = fmt(gp.alpha);
  manifest["beta"] = fmt(gp.beta);
  manifest["beta_r"] = fmt(gp.betaR);
  manifest["seed"] = std::to_string(gp.seed);

  const ScenarioRun run = runScenario(events, c.seed, DsabmTransitionCost(gp));
  GenerationTrace trace;
  const DynamicGraph g = generate(run.plan, gp, {}, &trace);
  manifest["steps"] = std::to_string(g.numSteps());
  manifest["nodes"] = std::to_string(g.allNodes().size());
  manifest["events"] = std::to_string(run.truth.eventLog.size());
  manifest["noise_skipped"] = std::to_string(trace.noiseSkipped);

  // Everything is computed before the first file is written.
  const std::string edgesText = formatEdges(g);
  const std::string truthText = formatPartition(run.truth.partition);
  const std::string manifestText = formatManifest(manifest);
  const fs::path dir(c.outDir);
  fs::create_directories(dir);
  writeFileAtomic(dir / "edges.tnet", edgesText);
  writeFileAtomic(dir / "groundtruth.part", truthText);
  writeFileAtomic(dir / "manifest.txt", manifestText);
  out << "generated " << g.numSteps() << " steps, " << g.allNodes().size() << " nodes into " << dir.string() << "\n";
  return 0;
}

int doDetect(const DetectConfig& c, std::ostream& out) {
  const Detector& detector = findDetector(c.method);
  const DynamicGraph g = readEdges(c.edges);
  DetectorOptions o;
  o.seed = c.seed;
  o.jobs = c.jobs;
  o.alphaSG = c.alphaSG;
  o.jaccardThreshold = c.threshold;
  o.window = c.window;
  const LongitudinalPartition found = detector(g, o);
  writePartition(c.out, found);
  out << c.method << ": wrote " << c.out << "\n";
  return 0;
}

int doEvaluate(const EvaluateConfig& c, std::ostream& out) {
  const DynamicGraph g = readEdges(c.edges);
  const LongitudinalPartition truth = readPartition(c.truth);
  const LongitudinalPartition found = readPartition(c.found);
  const EvaluationReport report = evaluate(g, truth, found, c.method);
  const std::string flat = formatReport(report);
  const std::string json = c.json.empty() ? std::string() : reportJson(report);
  if (c.out.empty()) {
    out << flat;
  } else {
    writeFileAtomic(c.out, flat);
  }
  if (!c.json.empty()) writeFileAtomic(c.json, json);
  return 0;
}

int doBench(const BenchConfig& c, std::ostream& out) {
  BenchParams p;
  p.stepPrefixes = c.steps;
  p.mValues = c.mValues;
  p.methods = c.methods;
  p.sliceSteps = c.slice;
  p.mu = c.mu;
  p.seed = c.seed;
  p.jobs = c.jobs;
  p.repeats = c.repeats;
  const std::string table = formatBenchTable(runBench(p));
  if (c.out.empty()) {
    out << table;
  } else {
    writeFileAtomic(c.out, table);
  }
  return 0;
}

int doTam(const TamConfig& c, std::ostream& out) {
  const LongitudinalPartition p = readPartition(c.partition);
  std::optional<DynamicGraph> g;
  if (!c.edges.empty()) g = readEdges(c.edges);
  TamStyle style;
  style.cellWidth = c.cellWidth;
  style.rowHeight = c.rowHeight;
  writeFileAtomic(c.out, exportTAM(p, g ? &*g : nullptr, style));
  out << "wrote " << c.out << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic community benchmark generator and evaluator", "dynbench"};
  app.require_subcommand(1);

  GenerateConfig gen;
  auto* g = app.add_subcommand("generate", "Generate a dynamic graph and its ground truth");
  g->add_option("--out", gen.outDir, "Output directory")->required();
  auto* manifestOpt = g->add_option("--from-manifest", gen.manifestIn, "Regenerate from a manifest.txt")
                          ->check(CLI::ExistingFile);
  auto* scenarioOpt = g->add_option("--scenario", gen.scenarioFile, "Scenario file (.dcs)")->check(CLI::ExistingFile);
  auto* randomOpt = g->add_flag("--random", gen.random, "Random merge/split scenario");
  g->add_option("--m", gen.m, "Initial communities (random)")->check(CLI::Range(2, 1000000));
  g->add_option("--smin", gen.sMin, "Minimum initial size (random)");
  g->add_option("--smax", gen.sMax, "Maximum initial size (random)");
  g->add_option("--o", gen.o, "Operations (random)");
  auto* muOpt = g->add_option("--mu", gen.mu, "Sets alpha = 1 - mu and beta = mu")->check(CLI::Range(0.0, 1.0));
  auto* alphaOpt = g->add_option("--alpha", gen.alpha, "Density exponent (default 0.9)");
  auto* betaOpt = g->add_option("--beta", gen.beta, "Identifiability (default 0.05)");
  auto* betaROpt = g->add_option("--beta-r", gen.betaR, "Noise fraction")->capture_default_str();
  auto* seedOpt = g->add_option("--seed", gen.seed, "Seed")->envname("DYNBENCH_SEED");
  scenarioOpt->excludes(randomOpt);
  for (auto* opt : {scenarioOpt, randomOpt, muOpt, alphaOpt, betaOpt, betaROpt, seedOpt}) manifestOpt->excludes(opt);

  DetectConfig det;
  auto* d = app.add_subcommand("detect", "Run a dynamic community detector");
  d->add_option("--edges", det.edges, "Edge stream")->required()->check(CLI::ExistingFile);
  d->add_option("--method", det.method, "Detector name")->required();
  d->add_option("--out", det.out, "Output partition file")->required();
  d->add_option("--seed", det.seed, "Seed")->envname("DYNBENCH_SEED");
  d->add_option("--jobs", det.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  d->add_option("--alpha-sg", det.alphaSG, "Smoothed-graph coefficient")->check(CLI::Range(0.0, 1.0));
  d->add_option("--threshold", det.threshold, "Jaccard threshold")->check(CLI::Range(0.0, 1.0));
  d->add_option("--window", det.window, "Label-smoothing step window");

  EvaluateConfig ev;
  auto* e = app.add_subcommand("evaluate", "Score a partition against the ground truth");
  e->add_option("--edges", ev.edges, "Edge stream")->required()->check(CLI::ExistingFile);
  e->add_option("--truth", ev.truth, "Ground-truth partition")->required()->check(CLI::ExistingFile);
  e->add_option("--found", ev.found, "Partition to score")->required()->check(CLI::ExistingFile);
  e->add_option("--method", ev.method, "Name recorded in the report");
  e->add_option("--out", ev.out, "Report file (key = value); stdout when absent");
  e->add_option("--json", ev.json, "Report file (JSON)");

  BenchConfig be;
  auto* b = app.add_subcommand("bench", "Time detectors on step and size sweeps");
  b->add_option("--steps", be.steps, "Step-sweep prefix lengths")->delimiter(',');
  b->add_option("--m-values", be.mValues, "Size-sweep community counts")->delimiter(',');
  b->add_option("--methods", be.methods, "Detectors")->delimiter(',');
  b->add_option("--slice", be.slice, "Steps per size-sweep benchmark");
  b->add_option("--mu", be.mu, "Mixing parameter")->check(CLI::Range(0.0, 1.0));
  b->add_option("--seed", be.seed, "Seed")->envname("DYNBENCH_SEED");
  b->add_option("--jobs", be.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  b->add_option("--repeats", be.repeats, "Runs per timing (minimum is kept)")->check(CLI::Range(1u, 1000u));
  b->add_option("--out", be.out, "Table file; stdout when absent");

  TamConfig tam;
  auto* t = app.add_subcommand("tam", "Draw a temporal activity map as SVG");
  t->add_option("--partition", tam.partition, "Partition file")->required()->check(CLI::ExistingFile);
  t->add_option("--edges", tam.edges, "Edge stream marking present nodes")->check(CLI::ExistingFile);
  t->add_option("--out", tam.out, "SVG file")->required();
  t->add_option("--cell-width", tam.cellWidth, "Pixels per step")->check(CLI::Range(1, 1000));
  t->add_option("--row-height", tam.rowHeight, "Pixels per node")->check(CLI::Range(1, 1000));

  std::vector<std::string> argv{"dynbench"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err);
  }

  try {
    if (g->parsed()) return doGenerate(gen, out);
    if (d->parsed()) return doDetect(det, out);
    if (e->parsed()) return doEvaluate(ev, out);
    if (b->parsed()) return doBench(be, out);
    if (t->parsed()) return doTam(tam, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace dynbench::cli
