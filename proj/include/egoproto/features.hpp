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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egoproto/graph.hpp"
#include "egoproto/matrix.hpp"

namespace egoproto {

/// The thirteen ego measures, in canonical column order.
enum class Feature : std::size_t {
  DegreeC,
  BetweennessC,
  ClosenessC,
  EigenvectorC,
  GlobalEff,
  LocalEff,
  NodalEff,
  GlobalTrans,
  LocalTrans,
  EgoDensity,
  EgoNeighbors,
  DominantEdges,
  EgoWeight,
};

inline constexpr std::size_t kFeatureCount = 13;

std::string_view feature_name(Feature f);
std::optional<Feature> parse_feature(std::string_view name);
const std::array<Feature, kFeatureCount>& all_features();

struct FeatureOptions {
  /// Scale centralities to [0, 1] style values (degree / (n-1), pair-count
  /// normalized betweenness, component-scaled closeness). Off exports raw
  /// degree, raw betweenness and 1 / sum-of-distances.
  bool normalize_centrality = true;
  /// Worker threads for per-ego work; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct FeatureVector {
  std::string ego;
  std::array<double, kFeatureCount> values{};

  double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }
  double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
};

struct Centralities {
  double degree = 0.0;
  double betweenness = 0.0;
  double closeness = 0.0;
  double eigenvector = 0.0;
};

struct Transitivities {
  double global = 0.0;
  double local = 0.0;
};

struct ActorMeasures {
  double density = 0.0;
  double neighbors = 0.0;
  double dominant_edges = 0.0;
  double weight = 0.0;
};

// Per-ego measures. Shortest paths use edge length 1 / weight.

Centralities centralities(const EgoGraph& e, const FeatureOptions& opts = {});
double global_efficiency(const EgoGraph& e);
double local_efficiency(const EgoGraph& e);
double nodal_efficiency(const EgoGraph& e);
Transitivities transitivities(const EgoGraph& e);
ActorMeasures actor_measures(const EgoGraph& e);

/// Ego entry of the principal eigenvector of the weighted adjacency matrix
/// (max-norm 1), by power iteration on A + I over the ego's component.
double eigenvector_centrality(const WeightedGraph& g, NodeIndex node);

/// Triangles in the whole graph.
std::size_t triangle_count(const WeightedGraph& g);

FeatureVector compute_features(const EgoGraph& e, const FeatureOptions& opts = {});

/// A named group of feature columns.
struct FeatureSubset {
  std::string id;
  std::vector<Feature> members;

  std::vector<std::string> names() const;
  bool operator==(const FeatureSubset&) const = default;
};

/// Subsets "i" .. "viii": centrality, efficiency, transitivity, their
/// pairwise unions (iv = i+ii, v = i+iii, vi = ii+iii), actor measures, and
/// all thirteen.
FeatureSubset standard_subset(std::string_view id);
std::vector<FeatureSubset> standard_subsets();
FeatureSubset all_features_subset();

/// Rows are egos in sorted-id order; columns follow `subset.members`.
struct FeatureMatrix {
  std::vector<std::string> egos;
  FeatureSubset subset;
  Matrix values;

  std::size_t rows() const { return values.rows(); }
  std::size_t cols() const { return values.cols(); }

  /// Columns of `target`; every member must be present here.
  FeatureMatrix restrict_to(const FeatureSubset& target) const;
};

/// One row per node of `g` (or per id in `egos` when given), each treated
/// as the ego of its `order`-hop ego graph. Not normalized.
FeatureMatrix feature_matrix(const WeightedGraph& g, const FeatureSubset& subset, int order,
                             const FeatureOptions& opts = {},
                             std::span<const std::string> egos = {});

/// Rows from prepared ego graphs, sorted by ego id.
FeatureMatrix feature_matrix(std::span<const EgoGraph> egos, const FeatureSubset& subset,
                             const FeatureOptions& opts = {});

/// Per-column min-max ranges, kept so new rows can be mapped onto the
/// scale of the data they were fit on.
struct MinMaxScaler {
  std::vector<double> lo;
  std::vector<double> hi;

  static MinMaxScaler fit(const Matrix& m);
  /// Constant columns map to 0. With `clamp`, results are kept in [0, 1].
  Matrix transform(const Matrix& m, bool clamp = false) const;
};

/// (v - min) / (max - min) per column; constant columns become 0.
FeatureMatrix minmax_normalize(const FeatureMatrix& m);

}  // namespace egoproto
