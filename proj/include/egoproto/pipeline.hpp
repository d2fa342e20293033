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
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egoproto/clustering.hpp"
#include "egoproto/events.hpp"
#include "egoproto/feature_eval.hpp"
#include "egoproto/features.hpp"
#include "egoproto/graph.hpp"
#include "egoproto/model_selection.hpp"
#include "egoproto/prototypes.hpp"
#include "egoproto/temporal.hpp"

namespace egoproto {

enum class KSelection { Gap, LMethod, Fixed };

std::string_view k_selection_name(KSelection s);
std::optional<KSelection> parse_k_selection(std::string_view name);

struct TemporalConfig {
  Granularity granularity = Granularity::Day;
  std::optional<Timestamp> start;  // default: first event
  std::optional<Timestamp> end;    // default: just past the last event
  int utc_offset_minutes = 0;
};

/// Everything a run depends on besides the input bytes.
struct RunConfig {
  std::string input;
  InputFormat format = InputFormat::EdgeList;
  std::string egos;  // optional ego list; empty means every node
  int ego_order = 2;
  bool prune = true;
  BackboneParams backbone;
  std::string subset = "v";  // i..viii, "all" (= viii) or "fsfs"
  Algorithm algorithm = Algorithm::Hierarchical;
  KSelection k_selection = KSelection::Gap;
  std::size_t k = 0;               // used with KSelection::Fixed
  std::size_t lmethod_max_k = 40;  // right end of the L-method curve
  std::optional<std::uint64_t> seed;
  GapOptions gap;
  KMeansOptions kmeans;
  AffinityOptions affinity;
  PcaOptions pca;
  FeatureOptions features;
  LabelRules rules;
  bool corpus_medians = false;  // take the C5/C6 reference medians from the data
  std::optional<TemporalConfig> temporal;
  bool strict = false;
  std::string out_dir;  // empty: nothing is written
  bool cache = true;    // stage cache under <out_dir>/cache

  /// Reads the JSON form. Relative paths are taken against `base_dir`.
  /// Unknown keys and bad values throw InvalidArgument.
  static RunConfig from_json(std::string_view text, const std::string& base_dir = "");
  std::string to_json() const;
  /// Throws InvalidArgument for inconsistent settings or a missing seed.
  void validate() const;
  std::uint64_t seed_value() const;
};

/// Input side of a run: the pruned graph and raw features of every ego.
struct PreparedData {
  WeightedGraph graph;
  std::vector<Event> events;
  std::vector<EgoGraph> egos;            // sorted by ego id
  std::vector<FeatureVector> vectors;    // raw, aligned with egos
  FeatureMatrix features;                // raw, all thirteen columns
  std::vector<std::optional<Prototype>> truth;  // from the ego list, when given
  std::vector<std::string> warnings;
  bool from_cache = false;
};

/// Ingest, build, prune, extract egos and compute features. The graph and
/// feature stages are cached on disk (keyed by input bytes and the settings
/// they depend on) when the config has an output directory.
PreparedData prepare(const RunConfig& cfg);

struct Analysis {
  FeatureSubset subset;
  MinMaxScaler scaler;        // fit on the subset columns
  FeatureMatrix normalized;   // subset columns in [0, 1]
  SubsetScore score;
  ReducedMatrix reduced;
  ClusteringResult clustering;
  std::optional<GapReport> gap;
  std::optional<KneeReport> knee;
  std::optional<double> silhouette;  // absent with fewer than two clusters
  LabelRules rules;
  std::vector<PrototypeLabel> labels;  // per cluster
};

/// Normalize, pick the subset, reduce, pick k and cluster. Labels are left
/// empty. `raw` may hold any columns the subset needs.
Analysis cluster_features(const FeatureMatrix& raw, const RunConfig& cfg);

/// cluster_features() on the prepared data, then labelling.
Analysis analyze(const PreparedData& data, const RunConfig& cfg);

/// Subset named by `id` (i..viii, all, fsfs) for normalized features.
FeatureSubset resolve_subset(std::string_view id, const FeatureMatrix& normalized_all);

struct TemporalResult {
  std::vector<Window> windows;
  std::vector<TemporalAssignment> assignments;
  OccupancyReport report;
};

/// Places every (ego, window) on the pooled fit: the window's ego graph is
/// scaled and projected like the pooled data and takes the label of the
/// nearest cluster center. Egos without edges in a window get no-data.
TemporalResult assign_windows(const PreparedData& data, const Analysis& analysis, const RunConfig& cfg);

struct RunResult {
  PreparedData data;
  Analysis analysis;
  std::optional<TemporalResult> temporal;
  std::vector<std::string> artifacts;  // files written, relative to out_dir
};

/// The full pipeline; writes artifacts when `cfg.out_dir` is set.
RunResult run_pipeline(const RunConfig& cfg);

/// 64-bit FNV-1a, used for stage cache keys.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace egoproto
