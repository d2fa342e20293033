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
#include <string_view>
#include <vector>

#include "egoproto/matrix.hpp"

namespace egoproto {

/// Points projected onto leading principal components.
struct ReducedMatrix {
  Matrix points;                 // rows x components
  Matrix components;             // components x input columns, orthonormal rows
  std::vector<double> mean;      // input column means
  std::vector<double> explained_variance;
  std::vector<double> explained_variance_ratio;
  double total_variance = 0.0;

  /// Projects new rows (same columns as the fitted input).
  Matrix project(const Matrix& rows) const;
};

struct PcaOptions {
  double variance_target = 0.90;
  std::size_t min_components = 2;
};

/// Smallest number of components whose cumulative explained variance
/// reaches the target, but at least `min_components` (capped by the column
/// count). Component signs are fixed so the largest-magnitude loading is
/// positive. Zero total variance maps every row to the origin with a single
/// component.
ReducedMatrix pca_reduce(const Matrix& m, const PcaOptions& opts = {});

enum class Algorithm { KMeans, Hierarchical, AffinityPropagation };

std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct ClusteringResult {
  Algorithm algorithm = Algorithm::KMeans;
  std::vector<int> assignments;  // per input row, dense in [0, k)
  std::size_t k = 0;
  /// Cluster means (k-means, hierarchical) or exemplar points (AP), one
  /// row per cluster.
  Matrix centers;
  std::vector<std::size_t> exemplars;  // AP only: row index per cluster
  double inertia = 0.0;                // within-cluster sum of squares
  std::vector<double> inertia_history; // k-means: per iteration of the best run
  std::size_t iterations = 0;
  bool converged = true;
  std::uint64_t seed = 0;
};

/// Within-cluster sum of squared distances to the cluster means.
double within_cluster_ss(const Matrix& points, const std::vector<int>& assignments, std::size_t k);

/// Means of each cluster, k x cols.
Matrix cluster_means(const Matrix& points, const std::vector<int>& assignments, std::size_t k);

/// Relabels clusters 0..k-1 in order of first appearance.
std::size_t relabel_dense(std::vector<int>& assignments);

struct KMeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iterations = 300;
};

/// Lloyd iteration from k randomly chosen distinct points; the restart with
/// the lowest within-cluster sum of squares wins. A cluster that empties is
/// re-seeded with the point farthest from its centroid.
ClusteringResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                        const KMeansOptions& opts = {});

/// One agglomeration step. `a` and `b` are the representative row indices
/// of the merged clusters (a < b); the merged cluster keeps `a`.
struct Merge {
  std::size_t a = 0;
  std::size_t b = 0;
  double height = 0.0;
  std::size_t size = 0;
};

/// Ward-linkage merge sequence on Euclidean distance.
struct Dendrogram {
  std::size_t n = 0;
  std::vector<Merge> merges;  // n - 1 entries, heights nondecreasing

  /// Labels after applying the first n - k merges, dense by first row.
  std::vector<int> cut(std::size_t k) const;
};

/// Agglomerative Ward clustering. Among equally close pairs the one with
/// the smallest (i, j) representatives merges first.
Dendrogram ward_dendrogram(const Matrix& points);

ClusteringResult hierarchical(const Matrix& points, std::size_t k);
ClusteringResult hierarchical(const Matrix& points, const Dendrogram& tree, std::size_t k);

/// Shared self-similarity: the median of the off-diagonal similarities
/// gives a moderate cluster count, the minimum a small one.
enum class ApPreference { Median, Minimum };

struct AffinityOptions {
  double damping = 0.9;
  ApPreference preference = ApPreference::Median;
  std::size_t max_iterations = 1000;
  std::size_t convergence_window = 50;
};

/// Affinity propagation on negative squared Euclidean similarity, every
/// point sharing the preference picked by `opts.preference`. Exemplars
/// are points with r + a > 0; everything else joins its most similar
/// exemplar. `converged` is false when the exemplar set never held still
/// for a full window.
ClusteringResult affinity_propagation(const Matrix& points, const AffinityOptions& opts = {});

}  // namespace egoproto
