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
#include "egoproto/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "egoproto/error.hpp"
#include "egoproto/io.hpp"
#include "egoproto/rng.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace egoproto {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 3> kSelectionNames = {"gap", "lmethod", "fixed"};

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string resolve_path(const std::string& p, const std::string& base) {
  if (p.empty() || base.empty() || std::filesystem::path(p).is_absolute()) return p;
  return (std::filesystem::path(base) / p).lexically_normal().string();
}

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::InvalidArgument, "config: " + what); }

template <typename T>
T get(const Json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    bad_config("wrong type for '" + key + "'");
  }
}

Timestamp get_time(const Json& j, const std::string& key) {
  const auto t = parse_iso8601(get<std::string>(j, key));
  if (!t) bad_config("'" + key + "' is not an ISO 8601 time");
  return *t;
}

// Graph text for the stage cache: node ids first (isolated nodes survive),
// then edges with round-trip weights.
std::string graph_text(const WeightedGraph& g) {
  std::string out = "egoproto-graph 1\n";
  for (const auto& id : g.ids()) out += "n," + id + "\n";
  for (const Edge& e : g.edges()) out += "e," + g.id(e.u) + "," + g.id(e.v) + "," + io::format_number(e.weight, 17) + "\n";
  return out;
}

std::optional<WeightedGraph> graph_from_text(const std::string& text) {
  if (!text.starts_with("egoproto-graph 1\n")) return std::nullopt;
  std::vector<std::string> nodes;
  std::vector<EdgeRecord> edges;
  std::size_t pos = text.find('\n') + 1;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.starts_with("n,")) {
      nodes.push_back(line.substr(2));
    } else if (line.starts_with("e,")) {
      const std::size_t a = line.find(',', 2), b = line.find(',', a + 1);
      if (a == std::string::npos || b == std::string::npos) return std::nullopt;
      edges.push_back({line.substr(2, a - 2), line.substr(a + 1, b - a - 1), std::strtod(line.c_str() + b + 1, nullptr)});
    } else {
      return std::nullopt;
    }
  }
  return build_graph(edges, nodes);
}

std::optional<std::string> cache_read(const std::string& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    return io::read_file(path);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::size_t nearest_row(const Matrix& centers, std::span<const double> x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.rows(); ++c) {
    double d = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double t = centers(c, j) - x[j];
      d += t * t;
    }
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

std::string_view k_selection_name(KSelection s) { return kSelectionNames[static_cast<std::size_t>(s)]; }

std::optional<KSelection> parse_k_selection(std::string_view name) {
  for (std::size_t i = 0; i < kSelectionNames.size(); ++i) {
    if (kSelectionNames[i] == name) return static_cast<KSelection>(i);
  }
  return std::nullopt;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunConfig RunConfig::from_json(std::string_view text, const std::string& base_dir) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad_config(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) bad_config("top level must be an object");
  RunConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "input") {
      c.input = resolve_path(get<std::string>(v, key), base_dir);
    } else if (key == "format") {
      const auto f = parse_format(get<std::string>(v, key));
      if (!f) bad_config("unknown format");
      c.format = *f;
    } else if (key == "egos") {
      c.egos = resolve_path(get<std::string>(v, key), base_dir);
    } else if (key == "ego_order") {
      c.ego_order = get<int>(v, key);
    } else if (key == "prune") {
      c.prune = get<bool>(v, key);
    } else if (key == "significance") {
      c.backbone.significance = get<double>(v, key);
    } else if (key == "subset") {
      c.subset = get<std::string>(v, key);
    } else if (key == "algorithm") {
      c.algorithm = parse_algorithm(get<std::string>(v, key));
    } else if (key == "k_selection") {
      const auto s = parse_k_selection(get<std::string>(v, key));
      if (!s) bad_config("k_selection must be gap, lmethod or fixed");
      c.k_selection = *s;
    } else if (key == "k") {
      c.k = get<std::size_t>(v, key);
    } else if (key == "lmethod_max_k") {
      c.lmethod_max_k = get<std::size_t>(v, key);
    } else if (key == "seed") {
      c.seed = get<std::uint64_t>(v, key);
    } else if (key == "k_max") {
      c.gap.k_max = get<std::size_t>(v, key);
    } else if (key == "references") {
      c.gap.references = get<std::size_t>(v, key);
    } else if (key == "se_rule") {
      const auto s = get<std::string>(v, key);
      if (s == "standard") {
        c.gap.se_rule = GapSeRule::Standard;
      } else if (s == "printed") {
        c.gap.se_rule = GapSeRule::Printed;
      } else {
        bad_config("se_rule must be standard or printed");
      }
    } else if (key == "threads") {
      c.gap.threads = c.features.threads = get<unsigned>(v, key);
    } else if (key == "kmeans_restarts") {
      c.kmeans.restarts = get<std::size_t>(v, key);
    } else if (key == "kmeans_max_iterations") {
      c.kmeans.max_iterations = get<std::size_t>(v, key);
    } else if (key == "ap_damping") {
      c.affinity.damping = get<double>(v, key);
    } else if (key == "ap_max_iterations") {
      c.affinity.max_iterations = get<std::size_t>(v, key);
    } else if (key == "ap_convergence_window") {
      c.affinity.convergence_window = get<std::size_t>(v, key);
    } else if (key == "ap_preference") {
      const auto s = get<std::string>(v, key);
      if (s == "median") {
        c.affinity.preference = ApPreference::Median;
      } else if (s == "minimum") {
        c.affinity.preference = ApPreference::Minimum;
      } else {
        bad_config("ap_preference must be median or minimum");
      }
    } else if (key == "variance_target") {
      c.pca.variance_target = get<double>(v, key);
    } else if (key == "min_components") {
      c.pca.min_components = get<std::size_t>(v, key);
    } else if (key == "normalize_centrality") {
      c.features.normalize_centrality = get<bool>(v, key);
    } else if (key == "corpus_medians") {
      c.corpus_medians = get<bool>(v, key);
    } else if (key == "strict") {
      c.strict = get<bool>(v, key);
    } else if (key == "out") {
      c.out_dir = resolve_path(get<std::string>(v, key), base_dir);
    } else if (key == "cache") {
      c.cache = get<bool>(v, key);
    } else if (key == "temporal") {
      if (!v.is_object()) bad_config("'temporal' must be an object");
      TemporalConfig t;
      for (const auto& [tk, tv] : v.items()) {
        if (tk == "granularity") {
          const auto g = parse_granularity(get<std::string>(tv, tk));
          if (!g) bad_config("granularity must be day, week or month");
          t.granularity = *g;
        } else if (tk == "start") {
          t.start = get_time(tv, tk);
        } else if (tk == "end") {
          t.end = get_time(tv, tk);
        } else if (tk == "utc_offset_minutes") {
          t.utc_offset_minutes = get<int>(tv, tk);
        } else {
          bad_config("unknown key 'temporal." + tk + "'");
        }
      }
      c.temporal = t;
    } else {
      bad_config("unknown key '" + key + "'");
    }
  }
  return c;
}

std::string RunConfig::to_json() const {
  Json j;
  j["input"] = input;
  j["format"] = format_name(format);
  if (!egos.empty()) j["egos"] = egos;
  j["ego_order"] = ego_order;
  j["prune"] = prune;
  j["significance"] = backbone.significance;
  j["subset"] = subset;
  j["algorithm"] = algorithm_name(algorithm);
  j["k_selection"] = k_selection_name(k_selection);
  if (k_selection == KSelection::Fixed) j["k"] = k;
  j["lmethod_max_k"] = lmethod_max_k;
  if (seed) j["seed"] = *seed;
  j["k_max"] = gap.k_max;
  j["references"] = gap.references;
  j["se_rule"] = gap.se_rule == GapSeRule::Standard ? "standard" : "printed";
  j["kmeans_restarts"] = kmeans.restarts;
  j["kmeans_max_iterations"] = kmeans.max_iterations;
  j["ap_damping"] = affinity.damping;
  j["ap_max_iterations"] = affinity.max_iterations;
  j["ap_convergence_window"] = affinity.convergence_window;
  j["ap_preference"] = affinity.preference == ApPreference::Median ? "median" : "minimum";
  j["variance_target"] = pca.variance_target;
  j["min_components"] = pca.min_components;
  j["normalize_centrality"] = features.normalize_centrality;
  j["corpus_medians"] = corpus_medians;
  j["strict"] = strict;
  if (temporal) {
    Json t;
    t["granularity"] = granularity_name(temporal->granularity);
    if (temporal->start) t["start"] = format_iso8601(*temporal->start);
    if (temporal->end) t["end"] = format_iso8601(*temporal->end);
    t["utc_offset_minutes"] = temporal->utc_offset_minutes;
    j["temporal"] = t;
  }
  return j.dump(2) + "\n";
}

void RunConfig::validate() const {
  if (input.empty()) bad_config("'input' is required");
  if (!seed) bad_config("a seed is required");
  if (ego_order != 1 && ego_order != 2) bad_config("ego_order must be 1 or 2");
  if (!(backbone.significance > 0.0 && backbone.significance < 1.0)) bad_config("significance must lie in (0, 1)");
  if (subset != "all" && subset != "fsfs") {
    bool known = false;
    for (const auto& s : standard_subsets()) known = known || s.id == subset;
    if (!known) bad_config("unknown subset '" + subset + "'");
  }
  if (k_selection == KSelection::Fixed && k == 0) bad_config("fixed k selection needs k >= 1");
  if (gap.k_max < 2) bad_config("k_max must be at least 2");
  if (gap.references < 10) bad_config("references must be at least 10");
  if (lmethod_max_k < 5) bad_config("lmethod_max_k must be at least 5");
  if (kmeans.restarts == 0) bad_config("kmeans_restarts must be positive");
  if (!(affinity.damping >= 0.5 && affinity.damping < 1.0)) bad_config("ap_damping must lie in [0.5, 1)");
  if (!(pca.variance_target > 0.0 && pca.variance_target <= 1.0)) bad_config("variance_target must lie in (0, 1]");
  if (temporal) {
    if (format == InputFormat::EdgeList) bad_config("temporal mode needs timestamped input");
    if (temporal->start && temporal->end && !(*temporal->start < *temporal->end)) bad_config("temporal start must precede end");
  }
}

std::uint64_t RunConfig::seed_value() const {
  if (!seed) bad_config("a seed is required");
  return *seed;
}

PreparedData prepare(const RunConfig& cfg) {
  PreparedData out;
  const std::string bytes = io::read_file(cfg.input);
  const bool use_cache = cfg.cache && !cfg.out_dir.empty();
  const std::string cache_dir = (std::filesystem::path(cfg.out_dir) / "cache").string();

  IngestResult ingest = parse_events(bytes, cfg.format, {.strict = cfg.strict});
  out.warnings = std::move(ingest.warnings);
  out.events = std::move(ingest.events);

  char settings[128];
  std::snprintf(settings, sizeof settings, "graph|1|%d|%d|%.17g|", static_cast<int>(cfg.format), cfg.prune ? 1 : 0,
                cfg.backbone.significance);
  const std::uint64_t graph_key = fnv1a(bytes, fnv1a(settings));
  const std::string graph_path = cache_dir + "/graph-" + hex(graph_key) + ".txt";
  std::optional<WeightedGraph> cached_graph;
  if (use_cache) {
    if (const auto text = cache_read(graph_path)) cached_graph = graph_from_text(*text);
  }
  if (cached_graph) {
    out.graph = std::move(*cached_graph);
  } else {
    out.graph = build_graph(to_edge_records(out.events));
    if (cfg.prune) out.graph = disparity_filter(out.graph, cfg.backbone);
    if (use_cache) io::write_file(graph_path, graph_text(out.graph));
  }

  std::vector<std::string> ids;
  if (!cfg.egos.empty()) {
    std::vector<std::pair<std::string, std::optional<Prototype>>> listed;
    for (auto& e : io::parse_ego_list_csv(io::read_file(cfg.egos))) listed.emplace_back(std::move(e.ego), e.label);
    std::sort(listed.begin(), listed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < listed.size(); ++i) {
      if (i > 0 && listed[i].first == listed[i - 1].first) {
        throw Error(ErrorCode::InvalidArgument, "ego listed twice: " + listed[i].first);
      }
      if (!out.graph.find(listed[i].first)) throw Error(ErrorCode::UnknownNode, listed[i].first);
      ids.push_back(listed[i].first);
      out.truth.push_back(listed[i].second);
    }
  } else {
    ids = out.graph.ids();
  }
  if (ids.empty()) throw Error(ErrorCode::EmptyInput, "no egos to analyze");

  std::string ego_bytes;
  for (const auto& id : ids) ego_bytes += id + "\n";
  std::snprintf(settings, sizeof settings, "features|1|%d|%d|", cfg.ego_order, cfg.features.normalize_centrality ? 1 : 0);
  const std::uint64_t feature_key = fnv1a(ego_bytes, fnv1a(settings, graph_key));
  const std::string feature_path = cache_dir + "/features-" + hex(feature_key) + ".csv";
  bool have_features = false;
  if (use_cache) {
    if (const auto text = cache_read(feature_path)) {
      try {
        out.features = io::parse_features_csv(*text);
        have_features = out.features.egos == ids && out.features.subset.members == all_features_subset().members;
      } catch (const Error&) {
        have_features = false;
      }
    }
  }
  if (have_features) {
    out.from_cache = true;
    out.features.subset = all_features_subset();
  } else {
    out.features = feature_matrix(out.graph, all_features_subset(), cfg.ego_order, cfg.features, ids);
    if (use_cache) io::write_file(feature_path, io::features_csv(out.features, 17));
  }

  out.egos.reserve(ids.size());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    out.egos.push_back(extract_ego(out.graph, ids[r], cfg.ego_order));
    FeatureVector v;
    v.ego = ids[r];
    for (std::size_t c = 0; c < kFeatureCount; ++c) v.values[c] = out.features.values(r, c);
    out.vectors.push_back(v);
  }
  return out;
}

FeatureSubset resolve_subset(std::string_view id, const FeatureMatrix& normalized_all) {
  if (id == "all") return all_features_subset();
  if (id == "fsfs") return fsfs_select(normalized_all);
  return standard_subset(id);
}

Analysis cluster_features(const FeatureMatrix& features, const RunConfig& cfg) {
  const std::uint64_t seed = cfg.seed_value();
  const std::size_t n = features.rows();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "clustering needs at least two egos");

  Analysis a;
  a.subset = resolve_subset(cfg.subset, minmax_normalize(features));
  const FeatureMatrix raw = features.restrict_to(a.subset);
  a.scaler = MinMaxScaler::fit(raw.values);
  a.normalized = {raw.egos, a.subset, a.scaler.transform(raw.values)};
  a.score = score_subset(a.normalized, a.subset);
  a.reduced = pca_reduce(a.normalized.values, cfg.pca);
  const Matrix& points = a.reduced.points;

  if (cfg.algorithm == Algorithm::AffinityPropagation) {
    // Affinity propagation settles its own cluster count.
    a.clustering = affinity_propagation(points, cfg.affinity);
  } else {
    std::size_t k = cfg.k;
    std::optional<Dendrogram> tree;
    if (cfg.algorithm == Algorithm::Hierarchical) tree = ward_dendrogram(points);
    if (cfg.k_selection == KSelection::Gap) {
      GapOptions opts = cfg.gap;
      opts.k_max = std::min(opts.k_max, n);
      a.gap = gap_statistic(points, make_clusterer(cfg.algorithm, cfg.kmeans), seed, opts);
      k = a.gap->chosen_k;
    } else if (cfg.k_selection == KSelection::LMethod) {
      const std::size_t max_k = std::min(cfg.lmethod_max_k, n);
      const auto curve = tree ? merge_height_curve(*tree, max_k)
                              : dispersion_curve(points, make_clusterer(cfg.algorithm, cfg.kmeans), max_k, seed);
      a.knee = l_method(curve);
      k = a.knee->chosen_k;
    }
    if (k > n) throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds " + std::to_string(n) + " egos");
    // Same stream as the selection run for this k, so the partition matches.
    a.clustering = tree ? hierarchical(points, *tree, k) : kmeans(points, k, derive_seed(seed, k), cfg.kmeans);
  }
  a.clustering.seed = seed;
  if (a.clustering.k >= 2) a.silhouette = silhouette(points, a.clustering.assignments);
  return a;
}

Analysis analyze(const PreparedData& data, const RunConfig& cfg) {
  Analysis a = cluster_features(data.features, cfg);
  a.rules = cfg.corpus_medians ? with_corpus_medians(cfg.rules, data.egos, data.vectors) : cfg.rules;
  a.labels = label_clusters(data.egos, data.vectors, a.clustering.assignments, a.clustering.k, a.rules);
  return a;
}

TemporalResult assign_windows(const PreparedData& data, const Analysis& analysis, const RunConfig& cfg) {
  if (!cfg.temporal) throw Error(ErrorCode::InvalidArgument, "no temporal settings");
  if (cfg.format == InputFormat::EdgeList) throw Error(ErrorCode::InvalidArgument, "temporal mode needs timestamps");
  const TemporalConfig& tc = *cfg.temporal;
  WindowSpec spec;
  spec.granularity = tc.granularity;
  spec.utc_offset_minutes = tc.utc_offset_minutes;
  spec.start = tc.start ? *tc.start : data.events.front().time;
  spec.end = tc.end ? *tc.end : data.events.back().time + 1;

  TemporalResult out;
  out.windows = spec.windows();
  const auto graphs = window_graphs(data.events, out.windows);
  std::vector<std::size_t> columns;
  for (Feature f : analysis.subset.members) columns.push_back(static_cast<std::size_t>(f));

  const std::size_t egos = data.egos.size();
  std::vector<TemporalAssignment> cells(egos * graphs.size());
  detail::parallel_for(graphs.size(), cfg.features.threads, [&](std::size_t w) {
    const WeightedGraph& g = graphs[w];
    for (std::size_t i = 0; i < egos; ++i) {
      TemporalAssignment& cell = cells[i * graphs.size() + w];
      cell.ego = data.egos[i].ego;
      cell.window = w;
      const auto idx = g.find(cell.ego);
      if (!idx || g.degree(*idx) == 0) continue;
      const FeatureVector f = compute_features(extract_ego(g, *idx, cfg.ego_order), {cfg.features.normalize_centrality, 1});
      Matrix row(1, columns.size());
      for (std::size_t c = 0; c < columns.size(); ++c) row(0, c) = f.values[columns[c]];
      const Matrix projected = analysis.reduced.project(analysis.scaler.transform(row));
      const std::size_t cluster = nearest_row(analysis.clustering.centers, projected.row(0));
      cell.cluster = static_cast<int>(cluster);
      cell.label = analysis.labels[cluster].label;
    }
  });
  out.assignments = std::move(cells);
  out.report = occupancy_report(out.assignments, out.windows);
  return out;
}

RunResult run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  RunResult r;
  r.data = prepare(cfg);
  r.analysis = analyze(r.data, cfg);
  if (cfg.temporal) r.temporal = assign_windows(r.data, r.analysis, cfg);
  if (cfg.out_dir.empty()) return r;

  auto emit = [&](const std::string& name, std::string_view content) {
    io::write_file((std::filesystem::path(cfg.out_dir) / name).string(), content);
    r.artifacts.push_back(name);
  };
  const Analysis& a = r.analysis;
  emit("config.json", cfg.to_json());
  emit("features.csv", io::features_csv(r.data.features));
  emit("assignments.csv", io::assignments_csv(a.normalized.egos, a.clustering.assignments));
  emit("labels.csv", io::labels_csv(a.labels));
  emit("clustering.json", io::clustering_json(a.clustering, a.silhouette));
  emit("score.json", io::score_json(a.score));
  if (a.gap) emit("gap.json", io::gap_json(*a.gap));
  if (a.knee) emit("knee.json", io::knee_json(*a.knee));
  if (r.temporal) {
    emit("occupancy.csv", io::occupancy_csv(r.temporal->report));
    emit("sequence.csv", io::sequence_csv(r.temporal->report));
  }
  if (!r.data.warnings.empty()) {
    std::string text;
    for (const auto& w : r.data.warnings) text += w + "\n";
    emit("warnings.txt", text);
  }
  return r;
}

}  // namespace egoproto
