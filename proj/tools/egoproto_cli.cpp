/*
 * Copyright (c) 2026, The egoproto Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
// Command-line front end. Exit codes: 0 success, 1 validation error
// (bad flags, config or input), 2 runtime error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "egoproto/compare.hpp"
#include "egoproto/error.hpp"
#include "egoproto/io.hpp"
#include "egoproto/pipeline.hpp"

namespace {

using namespace egoproto;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
  bool strict = false;
};

// Pipeline flags shared by several subcommands. Only flags that were given
// override the config file.
struct RunFlags {
  std::string input;
  std::string format;
  std::string egos;
  std::optional<int> order;
  bool no_prune = false;
  std::optional<double> significance;
  std::string subset;
  std::string algorithm;
  std::string k_selection;
  std::optional<std::size_t> k;
  std::optional<std::size_t> k_max;
  std::optional<std::size_t> references;
  bool corpus_medians = false;
  std::optional<unsigned> threads;
};

void add_input_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("-i,--input", f.input, "Input file");
  cmd->add_option("-f,--format", f.format, "edge-list, call-log or proximity");
  cmd->add_option("--egos", f.egos, "CSV of ego ids (optional label column)");
  cmd->add_option("--order", f.order, "Ego graph order (1 or 2)");
  cmd->add_flag("--no-prune", f.no_prune, "Skip the disparity filter");
  cmd->add_option("--significance", f.significance, "Disparity filter significance level");
  cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

void add_cluster_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--subset", f.subset, "Feature subset: i..viii, all or fsfs");
  cmd->add_option("-a,--algorithm", f.algorithm, "kmeans, hierarchical or ap");
  cmd->add_option("--k-selection", f.k_selection, "gap, lmethod or fixed");
  cmd->add_option("-k,--k", f.k, "Cluster count (implies --k-selection fixed)");
  cmd->add_option("--k-max", f.k_max, "Largest k tried by the gap statistic");
  cmd->add_option("--references", f.references, "Gap reference datasets");
  cmd->add_flag("--corpus-medians", f.corpus_medians, "Measure the C5/C6 reference medians on the data");
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

RunConfig make_config(const Globals& g, const RunFlags& f) {
  RunConfig cfg;
  if (!g.config.empty()) {
    const std::string base = std::filesystem::path(g.config).parent_path().string();
    cfg = RunConfig::from_json(io::read_file(g.config), base);
  }
  if (!f.input.empty()) cfg.input = f.input;
  if (!f.format.empty()) {
    const auto fmt = parse_format(f.format);
    if (!fmt) invalid("unknown format '" + f.format + "'");
    cfg.format = *fmt;
  }
  if (!f.egos.empty()) cfg.egos = f.egos;
  if (f.order) cfg.ego_order = *f.order;
  if (f.no_prune) cfg.prune = false;
  if (f.significance) cfg.backbone.significance = *f.significance;
  if (!f.subset.empty()) cfg.subset = f.subset;
  if (!f.algorithm.empty()) cfg.algorithm = parse_algorithm(f.algorithm);
  if (!f.k_selection.empty()) {
    const auto s = parse_k_selection(f.k_selection);
    if (!s) invalid("unknown k selection '" + f.k_selection + "'");
    cfg.k_selection = *s;
  }
  if (f.k) {
    cfg.k = *f.k;
    if (f.k_selection.empty()) cfg.k_selection = KSelection::Fixed;
  }
  if (f.k_max) cfg.gap.k_max = *f.k_max;
  if (f.references) cfg.gap.references = *f.references;
  if (f.corpus_medians) cfg.corpus_medians = true;
  if (f.threads) cfg.gap.threads = cfg.features.threads = *f.threads;
  if (g.seed) cfg.seed = *g.seed;
  if (!g.out.empty()) cfg.out_dir = g.out;
  if (g.strict) cfg.strict = true;
  return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  if (cfg.out_dir.empty()) invalid("--out is required");
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

void write_out(const RunConfig& cfg, const std::string& name, std::string_view content) {
  const std::string path = out_path(cfg, name);
  io::write_file(path, content);
  std::cout << path << "\n";
}

void report_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void require_input(const RunConfig& cfg) {
  if (cfg.input.empty()) invalid("--input is required");
}

WeightedGraph read_graph(const std::string& path, bool strict) {
  return build_graph(io::parse_edges_csv(io::read_file(path), strict));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = std::min(s.find(',', start), s.size());
    if (comma > start) out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

void write_selection(const RunConfig& cfg, const Analysis& a) {
  if (a.gap) write_out(cfg, "gap.json", io::gap_json(*a.gap));
  if (a.knee) write_out(cfg, "knee.json", io::knee_json(*a.knee));
}

int run(int argc, char** argv) {
  CLI::App app{"Prototype discovery in ego networks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed (required for clustering)");
  app.add_option("--config", g.config, "JSON run configuration");
  app.add_option("-o,--out", g.out, "Output directory");
  app.add_flag("--strict", g.strict, "Treat malformed input rows as errors");

  RunFlags f;

  auto* ingest = app.add_subcommand("ingest", "Normalize an event file into sorted events.csv");
  add_input_flags(ingest, f);

  auto* build = app.add_subcommand("build", "Build the weighted graph (edges.csv)");
  add_input_flags(build, f);

  auto* prune = app.add_subcommand("prune", "Disparity-filter an edge list (edges.csv)");
  add_input_flags(prune, f);

  auto* features = app.add_subcommand("features", "Raw ego features of every node (features.csv)");
  add_input_flags(features, f);

  std::string features_file;
  auto* cluster = app.add_subcommand("cluster", "Cluster a features.csv (assignments.csv, clustering.json)");
  cluster->add_option("--features", features_file, "Raw features CSV")->required();
  add_cluster_flags(cluster, f);

  auto* select_k = app.add_subcommand("select-k", "Choose k for a features.csv (gap.json or knee.json)");
  select_k->add_option("--features", features_file, "Raw features CSV")->required();
  add_cluster_flags(select_k, f);

  std::string assignments_file;
  auto* label = app.add_subcommand("label", "Label clusters against the prototypes (labels.csv)");
  add_input_flags(label, f);
  label->add_option("--assignments", assignments_file, "assignments.csv from cluster")->required();

  std::string granularity;
  std::string start;
  std::string end;
  std::optional<int> utc_offset;
  auto* temporal = app.add_subcommand("temporal", "Pooled fit, then per-window occupancy (occupancy.csv, sequence.csv)");
  add_input_flags(temporal, f);
  add_cluster_flags(temporal, f);
  temporal->add_option("--granularity", granularity, "day, week or month");
  temporal->add_option("--start", start, "Window range start (ISO 8601)");
  temporal->add_option("--end", end, "Window range end (ISO 8601)");
  temporal->add_option("--utc-offset", utc_offset, "Calendar offset from UTC in minutes");

  std::string subsets = "i,ii,iii,iv,v,vi,vii,viii";
  std::string algorithms = "kmeans,hierarchical,ap";
  auto* compare = app.add_subcommand("compare", "Subset by algorithm comparison (compare.csv, compare.json)");
  add_input_flags(compare, f);
  add_cluster_flags(compare, f);
  compare->add_option("--subsets", subsets, "Comma-separated subsets")->capture_default_str();
  compare->add_option("--algorithms", algorithms, "Comma-separated algorithms")->capture_default_str();

  std::size_t per_label = 50;
  double noise = 0.05;
  auto* generate = app.add_subcommand("generate", "Synthetic prototype corpus (edges.csv, egos.csv, config.json)");
  generate->add_option("--per-label", per_label, "Egos per prototype")->capture_default_str();
  generate->add_option("--noise", noise, "Rewiring and weight jitter level in [0, 0.5)")->capture_default_str();

  auto* run_cmd = app.add_subcommand("run", "Full pipeline with every artifact");
  add_input_flags(run_cmd, f);
  add_cluster_flags(run_cmd, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  RunConfig cfg = make_config(g, f);

  if (*ingest) {
    require_input(cfg);
    const IngestResult r = ingest_events(cfg.input, cfg.format, {.strict = cfg.strict});
    report_warnings(r.warnings);
    write_out(cfg, "events.csv", io::events_csv(r.events, cfg.format));
  } else if (*build) {
    require_input(cfg);
    const IngestResult r = ingest_events(cfg.input, cfg.format, {.strict = cfg.strict});
    report_warnings(r.warnings);
    write_out(cfg, "edges.csv", io::edges_csv(build_graph(to_edge_records(r.events))));
  } else if (*prune) {
    require_input(cfg);
    write_out(cfg, "edges.csv", io::edges_csv(disparity_filter(read_graph(cfg.input, cfg.strict), cfg.backbone)));
  } else if (*features) {
    require_input(cfg);
    // Staged input is usually already pruned; --significance prunes again.
    cfg.prune = f.significance.has_value() && !f.no_prune;
    cfg.cache = false;
    const PreparedData data = prepare(cfg);
    report_warnings(data.warnings);
    write_out(cfg, "features.csv", io::features_csv(data.features));
  } else if (*cluster || *select_k) {
    if (!cfg.seed) invalid("--seed is required");
    if (*select_k && cfg.k_selection == KSelection::Fixed) invalid("select-k needs gap or lmethod");
    const FeatureMatrix raw = io::parse_features_csv(io::read_file(features_file));
    const Analysis a = cluster_features(raw, cfg);
    if (*cluster) {
      write_out(cfg, "assignments.csv", io::assignments_csv(a.normalized.egos, a.clustering.assignments));
      write_out(cfg, "clustering.json", io::clustering_json(a.clustering, a.silhouette));
      write_out(cfg, "score.json", io::score_json(a.score));
    }
    write_selection(cfg, a);
  } else if (*label) {
    require_input(cfg);
    const auto rows = io::parse_assignments_csv(io::read_file(assignments_file));
    if (rows.empty()) invalid("no assignments");
    std::string ego_list = "ego\n";
    for (const auto& [ego, c] : rows) ego_list += ego + "\n";
    const std::string list_path = out_path(cfg, "label-egos.csv");
    io::write_file(list_path, ego_list);
    cfg.egos = list_path;
    cfg.prune = f.significance.has_value() && !f.no_prune;
    cfg.cache = false;
    const PreparedData data = prepare(cfg);
    std::filesystem::remove(list_path);
    report_warnings(data.warnings);
    std::vector<std::pair<std::string, int>> sorted(rows.begin(), rows.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> assignments;
    int max_cluster = -1;
    for (const auto& [ego, c] : sorted) {
      if (c < 0) invalid("negative cluster id for " + ego);
      assignments.push_back(c);
      max_cluster = std::max(max_cluster, c);
    }
    const LabelRules rules = cfg.corpus_medians ? with_corpus_medians(cfg.rules, data.egos, data.vectors) : cfg.rules;
    const auto labels = label_clusters(data.egos, data.vectors, assignments, static_cast<std::size_t>(max_cluster + 1), rules);
    write_out(cfg, "labels.csv", io::labels_csv(labels));
  } else if (*temporal) {
    TemporalConfig tc = cfg.temporal.value_or(TemporalConfig{});
    if (!granularity.empty()) {
      const auto gr = parse_granularity(granularity);
      if (!gr) invalid("unknown granularity '" + granularity + "'");
      tc.granularity = *gr;
    }
    auto parse_time = [](const std::string& s) {
      const auto t = parse_iso8601(s);
      if (!t) invalid("not an ISO 8601 time: " + s);
      return *t;
    };
    if (!start.empty()) tc.start = parse_time(start);
    if (!end.empty()) tc.end = parse_time(end);
    if (utc_offset) tc.utc_offset_minutes = *utc_offset;
    cfg.temporal = tc;
    if (cfg.out_dir.empty()) invalid("--out is required");
    const RunResult r = run_pipeline(cfg);
    report_warnings(r.data.warnings);
    for (const auto& name : r.artifacts) std::cout << out_path(cfg, name) << "\n";
  } else if (*compare) {
    cfg.validate();
    CompareOptions opts;
    opts.subsets = split_list(subsets);
    opts.algorithms.clear();
    for (const auto& name : split_list(algorithms)) opts.algorithms.push_back(parse_algorithm(name));
    if (opts.subsets.empty() || opts.algorithms.empty()) invalid("compare needs at least one subset and algorithm");
    if (cfg.out_dir.empty()) invalid("--out is required");
    const PreparedData data = prepare(cfg);
    report_warnings(data.warnings);
    const auto cells = compare_grid(data, cfg, opts);
    write_out(cfg, "compare.csv", compare_csv(cells));
    write_out(cfg, "compare.json", compare_json(cells));
  } else if (*generate) {
    if (!cfg.seed) invalid("--seed is required");
    if (!(noise >= 0.0 && noise < 0.5)) invalid("noise must lie in [0, 0.5)");
    const Corpus corpus = generate_corpus(per_label, *cfg.seed, noise);
    write_out(cfg, "edges.csv", io::edges_csv(build_graph(corpus.edges, corpus.nodes)));
    write_out(cfg, "egos.csv", io::ego_list_csv(corpus));
    // A ready-to-run config: the corpus graph is already a backbone.
    RunConfig run_cfg;
    run_cfg.input = "edges.csv";
    run_cfg.egos = "egos.csv";
    run_cfg.prune = false;
    run_cfg.seed = *cfg.seed;
    write_out(cfg, "config.json", run_cfg.to_json());
  } else if (*run_cmd) {
    if (cfg.out_dir.empty()) invalid("--out is required");
    const RunResult r = run_pipeline(cfg);
    report_warnings(r.data.warnings);
    for (const auto& name : r.artifacts) std::cout << out_path(cfg, name) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const egoproto::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_validation() ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
