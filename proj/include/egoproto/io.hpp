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

// Text formats for every artifact the pipeline reads or writes. Writers
// produce deterministic bytes for identical inputs.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egoproto/clustering.hpp"
#include "egoproto/events.hpp"
#include "egoproto/feature_eval.hpp"
#include "egoproto/features.hpp"
#include "egoproto/graph.hpp"
#include "egoproto/model_selection.hpp"
#include "egoproto/prototypes.hpp"
#include "egoproto/temporal.hpp"

namespace egoproto::io {

/// Throws Io on failure.
std::string read_file(const std::string& path);
/// Creates missing parent directories. Throws Io on failure.
void write_file(const std::string& path, std::string_view content);

/// printf "%.<digits>g"; non-finite values print as "nan", "inf", "-inf".
std::string format_number(double v, int digits = 12);

/// "src,dst,weight" with round-trip precision, one row per edge in index
/// order.
std::string edges_csv(const WeightedGraph& g);
/// Edge records from "src,dst,weight" text (an edge list event parse).
std::vector<EdgeRecord> parse_edges_csv(std::string_view text, bool strict = false);

/// Normalized events: "a,b,timestamp" (ISO 8601 UTC) for timestamped
/// input, "src,dst,weight" for edge lists.
std::string events_csv(const std::vector<Event>& events, InputFormat format);

/// "ego,<feature names...>" with values at `digits` significant digits.
std::string features_csv(const FeatureMatrix& m, int digits = 12);
/// Inverse of features_csv; column names must be known feature names.
FeatureMatrix parse_features_csv(std::string_view text);

/// "ego,cluster".
std::string assignments_csv(const std::vector<std::string>& egos, const std::vector<int>& assignments);
std::vector<std::pair<std::string, int>> parse_assignments_csv(std::string_view text);

/// "cluster,label,confidence,evidence" with evidence as
/// "rule=value;rule=value".
std::string labels_csv(const std::vector<PrototypeLabel>& labels);

struct EgoListEntry {
  std::string ego;
  std::optional<Prototype> label;
};

/// "ego,label" for a generated corpus.
std::string ego_list_csv(const Corpus& corpus);
/// One ego per line with an optional second column naming a prototype. A
/// first line "ego[,label]" is skipped.
std::vector<EgoListEntry> parse_ego_list_csv(std::string_view text);

/// "ego,label,share" per ego and label with data; egos without any data
/// get a single "ego,no-data," row.
std::string occupancy_csv(const OccupancyReport& r);
/// "ego,window,date,label,weekend" with label "no-data" for empty windows.
std::string sequence_csv(const OccupancyReport& r);

std::string gap_json(const GapReport& r);
std::string knee_json(const KneeReport& r);
/// Run diagnostics: algorithm, k, seed, convergence and quality scores.
std::string clustering_json(const ClusteringResult& r, std::optional<double> silhouette);
std::string score_json(const SubsetScore& s);

}  // namespace egoproto::io
