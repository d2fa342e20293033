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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egoproto/features.hpp"
#include "egoproto/graph.hpp"

namespace egoproto {

/// The eight neighborhood patterns, plus an explicit escape label.
enum class Prototype { C1, C2, C3, C4, C5, C6, C7, C8, Unmatched };

inline constexpr std::size_t kPrototypeCount = 8;

std::string_view prototype_name(Prototype p);
std::optional<Prototype> parse_prototype(std::string_view name);
/// C1..C8 in order.
std::vector<Prototype> all_prototypes();

/// Thresholds behind the labelling rules.
struct LabelRules {
  double completeness_min = 0.9;  // C8
  double star_min = 0.8;          // C2
  double c7_low = 0.8, c7_high = 0.9;
  double c4_low = 0.7, c4_high = 0.8;
  double c1_low = 0.6, c1_high = 0.7;
  double c3_low = 0.5, c3_high = 0.6;
  double c5_density_max = 0.5;
  double c6_density_max = 0.4;
  double c6_triangles_min = 1.0, c6_triangles_max = 3.0;
  /// Reference medians for the relative rules (C5: closeness and
  /// eigenvector centrality at or above them; C6: size below). The defaults
  /// are the medians of the standard generated corpus; use
  /// with_corpus_medians to take them from the data at hand.
  double median_closeness = 1.1;
  double median_eigenvector = 0.95;
  double median_size = 8.0;
};

struct SizeStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
};

/// Aggregate description of a group of ego graphs. Feature means use raw
/// (unnormalized) values.
struct ClusterProfile {
  std::size_t members = 0;
  std::array<double, kFeatureCount> mean_features{};
  double density_low = 0.0;
  double density_high = 0.0;
  double mean_density = 0.0;
  double star_score = 0.0;    // share of egos whose neighbors share no edge
  double completeness = 0.0;  // share of egos with density 1
  SizeStats size;             // ego graph node counts
  double mean_triangles = 0.0;

  double mean(Feature f) const { return mean_features[static_cast<std::size_t>(f)]; }
};

struct Evidence {
  std::string rule;
  double value = 0.0;
};

struct PrototypeLabel {
  Prototype label = Prototype::Unmatched;
  std::vector<Evidence> evidence;  // every satisfied rule, in priority order
  double confidence = 0.0;
};

/// `features` holds the raw feature vector of each member, same order.
ClusterProfile profile_cluster(std::span<const EgoGraph> members, std::span<const FeatureVector> features);

/// First matching rule in priority order: C8 completeness, C2 star, the
/// C7/C4/C1/C3 density bands, C5 central low-density ego, C6 small sparse
/// graph with few triangles; otherwise Unmatched. Confidence is 1 for a
/// match and 0 for Unmatched.
PrototypeLabel label_cluster(const ClusterProfile& p, const LabelRules& rules = {});

/// Label of a single ego graph.
PrototypeLabel label_ego(const EgoGraph& e, const FeatureVector& f, const LabelRules& rules = {});

/// Labels each cluster of an assignment; confidence becomes the share of
/// members whose own label agrees with the cluster label.
std::vector<PrototypeLabel> label_clusters(std::span<const EgoGraph> egos, std::span<const FeatureVector> features,
                                           const std::vector<int>& assignments, std::size_t k,
                                           const LabelRules& rules = {});

/// Copy of `rules` with the reference medians measured on a corpus.
LabelRules with_corpus_medians(LabelRules rules, std::span<const EgoGraph> egos,
                               std::span<const FeatureVector> features);

struct GeneratorParams {
  std::size_t nodes = 0;  // 0 = the prototype's default size
  /// Chance that each edge touching a second-order node is moved to a
  /// random free pair that also touches one; also the relative weight
  /// jitter.
  double noise = 0.0;
  int max_attempts = 100;
};

/// Default node count of each prototype's generator.
std::size_t default_generator_size(Prototype p);

/// Random ego graph (order 2) that the labelling rules place in `label`.
/// Node ids are `prefix` for the ego and `prefix` + "_a<i>" / "_s<i>" for
/// alters and second-order nodes. Weights are drawn from [1, 1.5].
/// Throws GenerationFailed when no valid graph appears within the attempt
/// budget.
EgoGraph generate_prototype(Prototype label, std::uint64_t seed, const GeneratorParams& params = {},
                            const std::string& prefix = "ego", const LabelRules& rules = {});

struct CorpusEgo {
  std::string ego;
  Prototype label = Prototype::Unmatched;
};

struct Corpus {
  std::vector<EdgeRecord> edges;   // disjoint union of all generated graphs
  std::vector<CorpusEgo> egos;     // sorted by ego id
  std::vector<std::string> nodes;  // every node id (some may be isolated)
};

/// `per_label` graphs of each of the eight prototypes. Ego ids are
/// "e<index>" in a seeded shuffled order, so ids say nothing about labels.
Corpus generate_corpus(std::size_t per_label, std::uint64_t seed, double noise = 0.05,
                       const LabelRules& rules = {});

}  // namespace egoproto
